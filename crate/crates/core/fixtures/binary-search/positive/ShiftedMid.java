class ShiftedMid {
    public static int lowerBound(long[] values, long x) {
        int left = 0, right = values.length;
        int probes = 0;
        while (left < right) {
            probes++;
            int m = (left + right) >>> 1;
            if (values[m] < x) {
                left = m + 1;
            } else {
                right = m;
            }
        }
        System.out.println(probes + " probes");
        return left;
    }
}
