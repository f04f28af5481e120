import java.util.ArrayList;
import java.util.List;

class IfVariant {
    public static List<Integer> factorize(int value) {
        List<Integer> out = new ArrayList<>();
        int count = 0;
        for (int p = 2; p <= value; ) {
            if (value % p == 0) {
                out.add(p);
                count++;
                value /= p;
            } else {
                p++;
            }
        }
        System.out.println("found " + count + " factors");
        return out;
    }
}
