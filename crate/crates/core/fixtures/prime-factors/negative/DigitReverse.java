class DigitReverse {
    static int reverse(int n) {
        int result = 0;
        for (int k = 0; k < 10; k++) {
            while (n > 0) {
                result = result * 10 + n % 10;
                n = n / 10;
            }
        }
        return result;
    }
}
