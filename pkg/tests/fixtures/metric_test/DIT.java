package fixtures.metrictest;

public class DIT {
    private int count;

    public DIT() {
        count = 0;
    }

    public int measure() {
        return count;
    }

    public void reset() {
        count = 0;
    }
}
