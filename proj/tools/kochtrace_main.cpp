#include <cstdio>

int main() {
  std::fprintf(stderr, "kochtrace: command line not wired up yet\n");
  return 2;
}
