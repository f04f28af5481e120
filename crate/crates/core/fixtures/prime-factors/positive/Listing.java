import java.util.LinkedList;
import java.util.List;

class Listing {
    List<Integer> getPrimeFactors(int n) {
        var primes = new LinkedList<Integer>();
        for (int i = 2; i <= n; i++) {
            while (n % i == 0) {
                primes.add(i);
                n /= i;
            }
        }
        return primes;
    }
}
