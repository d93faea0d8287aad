package fixtures.metrictest;

public class RFC {
    private int count;

    public RFC() {
        count = 0;
    }

    public int measure() {
        return count;
    }

    public void reset() {
        count = 0;
    }
}
