class ElseBranch {
    static int calls = 0;

    static int fibo(int n) {
        calls++;
        if (n == 0 || n == 1) {
            return n;
        } else {
            int value = fibo(n - 1) + fibo(n - 2);
            System.out.println("fibo(" + n + ") = " + value);
            return value;
        }
    }
}
