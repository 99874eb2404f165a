// Runs every applicable membership rule on a few rational functions.

#include <iostream>

#include "sparsechar/sparsechar.hpp"

using namespace sparsechar;

int main() {
  const auto f = parse_field("p=2,r=6");
  for (const char* text : {"x^3", "x^5", "(1)/(x^3)", "x^7 + x^3", "(x^2)/(x^2+x+1)"}) {
    const RatFn fn = parse_rational(*f, text);
    const Classification c = classify(*f, fn, ClassifyMode::Auto);
    std::cout << classification_json(*f, fn, c).dump() << "\n";
  }
  return 0;
}
