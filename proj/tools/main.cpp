#include <iostream>

int main() {
  std::cout << "yqc: placeholder\n";
  return 0;
}
