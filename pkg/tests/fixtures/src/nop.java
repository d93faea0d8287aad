package fixtures.nop;

abstract class Polymorphism {
    abstract void draw();

    abstract void color();
}

class ClassA extends Polymorphism {
    void draw() {
    }

    void color() {
    }
}

class ClassB extends Polymorphism {
    void draw() {
    }

    void color() {
    }
}
