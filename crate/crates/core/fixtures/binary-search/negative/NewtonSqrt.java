class NewtonSqrt {
    static double sqrt(double n) {
        double x = n;
        for (int i = 0; i < 20; i++) {
            x = (x + n / x) / 2;
        }
        return x;
    }
}
