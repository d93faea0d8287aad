package fixtures.dcc;

class ClassA {
    ClassC part;

    void handle(ClassB b) {
    }
}

class ClassB {
}

class ClassC {
}
