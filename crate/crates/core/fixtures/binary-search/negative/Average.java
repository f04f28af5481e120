class Average {
    static double runningAverage(int[] a) {
        double avg = 0;
        int low = 0;
        int high = a.length;
        while (low < high) {
            avg = (avg + a[low]) / 2;
            low++;
        }
        return avg;
    }
}
