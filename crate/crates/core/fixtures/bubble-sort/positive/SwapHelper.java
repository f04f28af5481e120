class SwapHelper {
    void sortDescending(int[] values) {
        int passes = 0;
        for (int outer = values.length - 1; outer > 0; outer--) {
            passes++;
            for (int inner = 0; inner < outer; inner++) {
                System.out.println("compare " + inner);
                if (values[inner] <= values[inner + 1]) {
                    swap(values, inner, inner + 1);
                }
            }
        }
        System.out.println(passes + " passes");
    }

    void swap(int[] a, int x, int y) {
        int t = a[x];
        a[x] = a[y];
        a[y] = t;
    }
}
