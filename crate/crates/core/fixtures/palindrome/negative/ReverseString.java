class ReverseString {
    static String reverse(String s) {
        String out = "";
        for (int i = s.length() - 1; i >= 0; i--) {
            out = out + s.charAt(i);
        }
        return out;
    }
}
