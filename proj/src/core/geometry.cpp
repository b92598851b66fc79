#include "nslit/geometry.hpp"

#include <cmath>
#include <string>

#include "nslit/types.hpp"

namespace nslit {

namespace {

void require_length(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string("geometry: ") + name + " must be a positive length");
  }
}

}  // namespace

SlitGeometry::SlitGeometry(double a1, std::optional<double> a2, double b, double c,
                           std::optional<double> d)
    : a1_(a1), a2_(a2), b_(b), c_(c), d_(d) {
  require_length(a1_, "a1");
  require_length(b_, "b");
  require_length(c_, "c");
  if (a2_) require_length(*a2_, "a2");
  if (d_) require_length(*d_, "d");
}

SlitGeometry SlitGeometry::single(double a1, double c, double b) {
  return SlitGeometry(a1, std::nullopt, b, c, std::nullopt);
}

SlitGeometry SlitGeometry::dual(double a1, double a2, double d, double c, double b) {
  return SlitGeometry(a1, a2, b, c, d);
}

double SlitGeometry::width(Slit slit) const {
  if (slit == Slit::first) return a1_;
  if (!a2_) throw DomainError("geometry: slit 2 requested on a single-slit geometry");
  return *a2_;
}

double SlitGeometry::offset(Slit slit) const {
  if (slit == Slit::first) return 0.0;
  if (!a2_) throw DomainError("geometry: slit 2 requested on a single-slit geometry");
  return a1_ + *d_;
}

SlitGeometry SlitGeometry::with_length(double b) const {
  return SlitGeometry(a1_, a2_, b, c_, d_);
}

void Truncation::validate() const {
  if (m_max < 0) throw DomainError("truncation: m_max must be >= 0");
  if (n_max < 0) throw DomainError("truncation: n_max must be >= 0");
  if (!(tail_tolerance > 0.0) || !std::isfinite(tail_tolerance)) {
    throw DomainError("truncation: tail_tolerance must be positive");
  }
}

}  // namespace nslit
