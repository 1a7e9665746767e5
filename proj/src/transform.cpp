#include <stdexcept>

#include "permuton/walks.hpp"

namespace permuton {
namespace {

void check_open_q(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("r/s transforms need q strictly inside (0, 1)");
  }
}

}  // namespace

double r_transform(double x, double q) {
  check_open_q(q);
  return x > 0.0 ? x / (1.0 - q) : x / q;
}

double s_transform(double x, double q) {
  check_open_q(q);
  return x > 0.0 ? (1.0 - q) * x : q * x;
}

}  // namespace permuton
