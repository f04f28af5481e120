class PrintFactors {
    static void printFactors(long number) {
        long rest = number;
        System.out.print(number + " = ");
        for (long d = 2; d * d <= rest; d++) {
            while (rest % d == 0) {
                System.out.print(d + " ");
                rest = rest / d;
            }
        }
        if (rest > 1) {
            System.out.print(rest);
        }
        System.out.println();
    }
}
