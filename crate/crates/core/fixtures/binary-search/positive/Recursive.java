class Recursive {
    int search(int[] sorted, int target, int lo, int hi) {
        if (lo > hi) {
            return -1;
        }
        int mid = lo + (hi - lo) / 2;
        if (sorted[mid] == target) {
            return mid;
        }
        if (sorted[mid] > target) {
            return search(sorted, target, lo, mid - 1);
        }
        return search(sorted, target, mid + 1, hi);
    }
}
