#include "cosdyn/address.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cosdyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::InvalidArgument, "bad integer in address \"" + std::string(whole) + "\"");
  return out;
}

std::vector<Symbol> parse_block(std::string_view block, std::string_view whole) {
  std::vector<Symbol> out;
  block = trim(block);
  if (block.empty())
    return out;
  std::size_t pos = 0;
  while (pos <= block.size()) {
    const std::size_t end = std::min(block.find(';', pos), block.size());
    std::string_view item = trim(block.substr(pos, end - pos));
    if (item.size() >= 2 && item.front() == '(' && item.back() == ')')
      item = item.substr(1, item.size() - 2);
    const std::size_t comma = item.find(',');
    if (comma == std::string_view::npos)
      throw Error(ErrorCode::InvalidArgument, "address symbols are (j,k) pairs: \"" +
                                                  std::string(whole) + "\"");
    out.push_back({parse_int(item.substr(0, comma), whole), parse_int(item.substr(comma + 1), whole)});
    pos = end + 1;
  }
  return out;
}

void write_block(std::ostringstream& s, const std::vector<Symbol>& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    s << (i ? ";" : "") << '(' << b[i].j << ',' << b[i].k << ')';
}

} // namespace

ExternalAddress::ExternalAddress(std::vector<Symbol> preperiod, std::vector<Symbol> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty())
    throw Error(ErrorCode::InvalidArgument, "an address needs a nonempty period block");
  for (const auto* block : {&pre_, &per_})
    for (const Symbol& s : *block)
      if (s.j != 0 && s.j != 1)
        throw Error(ErrorCode::InvalidArgument, "address symbol j must be 0 or 1");

  const std::size_t n = per_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i)
      repeats = per_[i] == per_[i - d];
    if (repeats) {
      per_.resize(d);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

ExternalAddress ExternalAddress::parse(std::string_view text) {
  const std::size_t bar = text.find('|');
  if (bar == std::string_view::npos)
    return ExternalAddress({}, parse_block(text, text));
  if (text.find('|', bar + 1) != std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "address has more than one '|'");
  return ExternalAddress(parse_block(text.substr(0, bar), text), parse_block(text.substr(bar + 1), text));
}

std::string ExternalAddress::to_string() const {
  std::ostringstream s;
  write_block(s, pre_);
  s << '|';
  write_block(s, per_);
  return s.str();
}

Symbol ExternalAddress::operator[](std::size_t n) const {
  if (n < pre_.size())
    return pre_[n];
  return per_[(n - pre_.size()) % per_.size()];
}

ExternalAddress ExternalAddress::shift() const {
  if (!pre_.empty())
    return ExternalAddress(std::vector<Symbol>(pre_.begin() + 1, pre_.end()), per_);
  std::vector<Symbol> p = per_;
  std::rotate(p.begin(), p.begin() + 1, p.end());
  return ExternalAddress({}, std::move(p));
}

} // namespace cosdyn
