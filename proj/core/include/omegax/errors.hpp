// Exception hierarchy for the omegax core library.
//
// Every failure mode in the library maps to one of these types so callers
// (tests, CLI) can distinguish usage mistakes from numerical breakdowns
// without string matching.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace omegax {

// Root of all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested allocation or segment exceeds the configured memory budget.
class sizing_error : public error {
 public:
  using error::error;
};

// An argument exceeds a configured operating limit (e.g. x > max_x).
class limit_error : public error {
 public:
  using error::error;
};

// An argument is outside the mathematical domain of the operation.
class domain_error : public error {
 public:
  using error::error;
};

// Evaluation requested exactly at a pole.
class pole_error : public error {
 public:
  using error::error;
};

// An argument is outside the supported numerical range of the engine.
class range_error : public error {
 public:
  using error::error;
};

// Evaluation requested inside the guard radius of a pole of F(s); carries
// the estimated location of the offending singularity (a zero of zeta(2s)).
class near_pole_error : public error {
 public:
  near_pole_error(const std::string& what, std::complex<double> zero)
      : error(what), offending_zero_(zero) {}
  std::complex<double> offending_zero() const { return offending_zero_; }

 private:
  std::complex<double> offending_zero_;
};

// A text input could not be parsed; carries the 1-based line number.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Ordinates not strictly ascending.
class order_error : public error {
 public:
  using error::error;
};

// A zero table with no entries where entries are required.
class empty_table_error : public error {
 public:
  using error::error;
};

// Binary cache problems: bad magic, wrong version, or short payload.
class cache_error : public error {
 public:
  enum class kind { format, version, truncation };
  cache_error(const std::string& what, kind k) : error(what), kind_(k) {}
  kind problem() const { return kind_; }

 private:
  kind kind_;
};

// Zero refinement failed to bracket or converge.
class refinement_error : public error {
 public:
  using error::error;
};

// A query (count, truncation) reaches beyond the table's coverage.
class coverage_error : public error {
 public:
  using error::error;
};

// A supplied ordinate is not within tolerance of an actual zero.
class invalid_ordinate_error : public error {
 public:
  using error::error;
};

// A contour's enclosure is ambiguous (none or several singularities, or a
// neighbor closer than the safety margin).
class geometry_error : public error {
 public:
  using error::error;
};

// Quadrature failed to converge to the requested accuracy.
class integration_error : public error {
 public:
  using error::error;
};

}  // namespace omegax
