class MultipleBindings {
    public int foo() {
        int x = 2;
        int y = 3;
        return x + y;
    }
}
