class Recursive {
    boolean palindrome(String text) {
        if (text.length() < 2) {
            return true;
        }
        if (text.charAt(0) != text.charAt(text.length() - 1)) {
            return false;
        }
        return palindrome(text.substring(1, text.length() - 1));
    }
}
