class SumHelpers {
    static int total(int[] values, int n) {
        if (n == 0) {
            return 0;
        }
        return first(values) + last(values);
    }

    static int first(int[] values) {
        return values[0];
    }

    static int last(int[] values) {
        return values[values.length - 1];
    }
}
