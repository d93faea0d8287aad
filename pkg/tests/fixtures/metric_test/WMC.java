package fixtures.metrictest;

public class WMC {
    private int count;

    public WMC() {
        count = 0;
    }

    public int measure() {
        return count;
    }

    public void reset() {
        count = 0;
    }
}
