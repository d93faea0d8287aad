package fixtures.cbo;

class SuperC {
    protected int total;

    void bump() {
        total = total + 1;
    }
}

class ClassB {
    void b1() {
    }
}

class ClassC extends SuperC {
    String note;
    ClassB helper;

    void work() {
        helper.b1();
    }
}

class ClassA {
    void run(ClassC c) {
        c.work();
    }
}

class ClassD {
    void poke(SuperC s) {
        s.bump();
        int x = s.total;
    }
}
