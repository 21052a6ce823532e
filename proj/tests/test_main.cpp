#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "sfi/symbols.hpp"

int main(int argc, char** argv) {
  // Pin the canonical variable precedence before any test interns symbols.
  sfi::sym("x");
  sfi::sym("y");
  sfi::sym("z");
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
