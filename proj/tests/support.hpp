#pragma once

#include "hnvol/hn_core.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace support {

inline hnvol::Rational R(const std::string& s) { return hnvol::parse_rational(s); }

inline hnvol::HNProfile prof(std::initializer_list<std::pair<const char*, long>> pieces) {
  std::vector<hnvol::HNPiece> out;
  for (const auto& [s, r] : pieces) out.push_back({R(s), r});
  return hnvol::HNProfile(std::move(out));
}

inline std::vector<hnvol::Rational> rats(std::initializer_list<const char*> xs) {
  std::vector<hnvol::Rational> out;
  for (const char* x : xs) out.push_back(R(x));
  return out;
}

}  // namespace support
