#include <cstdio>

int main() {
  std::puts("swald: command-line interface not wired up yet");
  return 1;
}
