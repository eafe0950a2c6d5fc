#include <cstdio>

int main() {
  std::puts("rdfview: command-line interface under construction");
  return 2;
}
