package fixtures.cis;

public class ClassA {
    public ClassA() {
    }

    public void pm() {
    }

    private void hidden() {
    }
}

class ClassB {
    public void only() {
    }

    void pkg() {
    }
}
