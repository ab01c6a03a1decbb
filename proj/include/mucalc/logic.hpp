#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mucalc {

enum class Cond : std::uint8_t { D = 0, T = 1, B = 2, Four = 3, Five = 4 };

// Closure order used everywhere conditions are applied in sequence.
inline constexpr Cond kAllConds[] = {Cond::D, Cond::T, Cond::B, Cond::Four, Cond::Five};

char cond_char(Cond c);
Cond cond_from_char(char c);

class CondSet {
 public:
  constexpr CondSet() = default;
  constexpr explicit CondSet(std::uint8_t bits) : bits_(bits) {}
  bool has(Cond c) const { return bits_ >> static_cast<int>(c) & 1U; }
  CondSet with(Cond c) const { return CondSet(bits_ | 1U << static_cast<int>(c)); }
  CondSet without(Cond c) const { return CondSet(bits_ & ~(1U << static_cast<int>(c))); }
  bool empty() const { return bits_ == 0; }
  std::uint8_t bits() const { return bits_; }
  bool subset_of(CondSet o) const { return (bits_ & ~o.bits_) == 0; }
  friend bool operator==(CondSet a, CondSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(CondSet a, CondSet b) { return a.bits_ != b.bits_; }

 private:
  std::uint8_t bits_ = 0;
};

// Logic names: letters D,T,B and digits 4,5 in any order; "K" alone is empty;
// K may also prefix other letters ("K45"). Aliases S4 = T4, S5 = T45.
CondSet parse_conds(std::string_view name);
// Adds the conditions every frame in the class already satisfies:
// T gives D; B with 5 gives 4; B with 4 gives 5; T with 5 gives B and 4.
CondSet implied_conds(CondSet c);

// Canonical name: "K" for empty, otherwise "K" followed by conditions in
// order, e.g. "KT4". Round-trips through parse_conds.
std::string conds_name(CondSet c);

struct LogicSpec {
  std::map<std::string, CondSet> agents;
  CondSet fallback;  // conditions for agents without an entry

  CondSet of(const std::string& agent) const;
  bool has(const std::string& agent, Cond c) const { return of(agent).has(c); }
  bool any(Cond c) const;  // some entry or the fallback has c
  LogicSpec& set(const std::string& agent, CondSet c) {
    agents[agent] = c;
    return *this;
  }
};

// "a=K4;b=S5", "*=T" sets the fallback. Empty text gives K everywhere.
LogicSpec parse_logic(std::string_view text);
std::string logic_name(const LogicSpec& s);

}  // namespace mucalc
