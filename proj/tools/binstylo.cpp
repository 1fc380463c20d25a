// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include <cstdio>

int main() {
  std::puts("binstylo: CLI under construction");
  return 0;
}
