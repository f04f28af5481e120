class Subtraction {
    int greatestCommonDivisor(int first, int second) {
        int steps = 0;
        while (first != second) {
            steps++;
            if (first > second) {
                first -= second;
            } else {
                second = second - first;
            }
        }
        System.out.println("steps: " + steps);
        return first;
    }
}
