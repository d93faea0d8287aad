package fixtures.metrictest;

public class DAM {
    private int count;

    public DAM() {
        count = 0;
    }

    public int measure() {
        return count;
    }

    public void reset() {
        count = 0;
    }
}
