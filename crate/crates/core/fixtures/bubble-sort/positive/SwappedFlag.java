class SwappedFlag {
    public static void sort(double[] data) {
        boolean swapped;
        do {
            swapped = false;
            for (int k = 1; k < data.length; k++) {
                if (data[k - 1] < data[k]) {
                    double tmp = data[k - 1];
                    data[k - 1] = data[k];
                    data[k] = tmp;
                    swapped = true;
                }
            }
        } while (swapped);
    }
}
