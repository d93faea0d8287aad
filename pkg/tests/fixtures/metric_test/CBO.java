package fixtures.metrictest;

public class CBO {
    private int count;

    public CBO() {
        count = 0;
    }

    public int measure() {
        return count;
    }

    public void reset() {
        count = 0;
    }
}
