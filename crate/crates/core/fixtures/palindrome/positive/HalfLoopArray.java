class HalfLoopArray {
    public static boolean check(char[] word) {
        int n = word.length;
        boolean result = true;
        for (int k = 0; k < n / 2; k++) {
            System.out.println("comparing position " + k);
            if (word[k] == word[n - 1 - k]) {
                continue;
            }
            result = false;
            break;
        }
        return result;
    }
}
