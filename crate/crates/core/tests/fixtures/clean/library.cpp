namespace library {

typedef int count_t;

class IShelf {
public:
  virtual ~IShelf() {}
  virtual count_t capacity() = 0;
};

class Shelf : public IShelf {
public:
  Shelf();
  virtual ~Shelf();
  count_t capacity();
private:
  count_t slots;
};

Shelf::Shelf() : slots(0) {
}

Shelf::~Shelf() {
}

count_t Shelf::capacity() {
  count_t total = 0;
  for (int i = 0; i < 4; i++) {
    total = total + slots;
  }
  if (total > 100) {
    return 100;
  } else {
    total = total + 1;
  }
  return total;
}

}

int main() {
  library::Shelf* shelf = new library::Shelf();
  int result = 0;
  switch (result) {
  case 0: {
    result = 1;
    break;
  }
  default: {
  }
  }
  delete shelf;
  return result;
}
