#pragma once

// Eventually periodic external addresses over {0,1} x Z. Symbol (j, k) names
// the half strip P_{j,k}: j = 0 upper, j = 1 lower half plane, k the strip
// over [2k pi, 2(k+1) pi].

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cosdyn {

struct Symbol {
  int j = 0;
  int k = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class ExternalAddress {
public:
  // Canonical form: the period block is primitive (not a power of a shorter
  // block) and the preperiod does not end with a copy of the period's last
  // symbol. Two addresses are equal iff they denote the same sequence.
  // Throws InvalidArgument for an empty period or j outside {0, 1}.
  ExternalAddress(std::vector<Symbol> preperiod, std::vector<Symbol> period);

  // "pre|period" with (j,k) pairs separated by ';', e.g. "(0,1)|(0,0);(1,-2)".
  // Without '|' the whole text is the period. Throws InvalidArgument.
  static ExternalAddress parse(std::string_view text);
  std::string to_string() const;

  const std::vector<Symbol>& preperiod() const { return pre_; }
  const std::vector<Symbol>& period() const { return per_; }
  bool periodic() const { return pre_.empty(); }

  Symbol operator[](std::size_t n) const;
  ExternalAddress shift() const;

  friend bool operator==(const ExternalAddress&, const ExternalAddress&) = default;

private:
  std::vector<Symbol> pre_;
  std::vector<Symbol> per_;
};

} // namespace cosdyn
