#pragma once

// Weight algebras. Each semiring is a stateless type exposing its carrier as
// `Weight` and the operations as static members; `better` is the strict order
// the best-path search optimises, and `direction` says which way it points.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace ntwfsm {

enum class Direction { Min, Max };

template <class S>
concept Semiring = requires(typename S::Weight a, typename S::Weight b, std::string_view text) {
  { S::zero() } -> std::same_as<typename S::Weight>;
  { S::one() } -> std::same_as<typename S::Weight>;
  { S::plus(a, b) } -> std::same_as<typename S::Weight>;
  { S::times(a, b) } -> std::same_as<typename S::Weight>;
  { S::better(a, b) } -> std::same_as<bool>;
  { S::parse_weight(text) } -> std::same_as<std::optional<typename S::Weight>>;
  { S::format_weight(a) } -> std::same_as<std::string>;
  { S::name } -> std::convertible_to<std::string_view>;
  { S::direction } -> std::convertible_to<Direction>;
};

/// Tropical semiring over 64-bit integers extended with one infinity.
/// The min variant is <Z u {+inf}, min, +, +inf, 0>; the max variant is
/// <Z u {-inf}, max, +, -inf, 0>.
template <Direction D>
struct Tropical {
  using Weight = std::int64_t;

  static constexpr Direction direction = D;
  static constexpr std::string_view name = D == Direction::Min ? "tropical-min" : "tropical-max";

  static constexpr Weight kPosInf = std::numeric_limits<Weight>::max();
  static constexpr Weight kNegInf = std::numeric_limits<Weight>::min();

  static constexpr Weight zero() { return D == Direction::Min ? kPosInf : kNegInf; }
  static constexpr Weight one() { return 0; }

  static constexpr Weight plus(Weight a, Weight b) {
    return D == Direction::Min ? std::min(a, b) : std::max(a, b);
  }

  static Weight times(Weight a, Weight b) {
    if (a == zero() || b == zero()) return zero();
    Weight sum = 0;
    if (__builtin_add_overflow(a, b, &sum)) return a > 0 ? kPosInf : kNegInf;
    return sum;
  }

  static constexpr bool better(Weight a, Weight b) {
    return D == Direction::Min ? a < b : a > b;
  }

  /// Accepts decimal integers and `inf`, `+inf`, `-inf`. The infinity that
  /// is not in the carrier is rejected.
  static std::optional<Weight> parse_weight(std::string_view text) {
    if (text == "inf" || text == "+inf") {
      if (D == Direction::Max) return std::nullopt;
      return kPosInf;
    }
    if (text == "-inf") {
      if (D == Direction::Min) return std::nullopt;
      return kNegInf;
    }
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    Weight value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) return std::nullopt;
    if (value == kPosInf || value == kNegInf) return std::nullopt;
    return value;
  }

  static std::string format_weight(Weight w) {
    if (w == kPosInf) return "inf";
    if (w == kNegInf) return "-inf";
    return std::to_string(w);
  }
};

using TropicalMin = Tropical<Direction::Min>;
using TropicalMax = Tropical<Direction::Max>;

/// Viterbi (max-times) semiring over non-negative doubles.
struct ProbMax {
  using Weight = double;

  static constexpr Direction direction = Direction::Max;
  static constexpr std::string_view name = "prob-max";

  static constexpr Weight zero() { return 0.0; }
  static constexpr Weight one() { return 1.0; }
  static Weight plus(Weight a, Weight b) { return std::max(a, b); }
  static Weight times(Weight a, Weight b) { return a * b; }
  static constexpr bool better(Weight a, Weight b) { return a > b; }

  static std::optional<Weight> parse_weight(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text == "inf") return std::numeric_limits<Weight>::infinity();
    Weight value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) return std::nullopt;
    if (std::isnan(value) || value < 0) return std::nullopt;
    return value;
  }

  static std::string format_weight(Weight w) {
    if (std::isinf(w)) return "inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, end);
  }
};

/// True iff `candidate` improves on `incumbent`; an unset incumbent (the
/// undefined prefix weight) is improved on by every weight.
template <Semiring S>
constexpr bool improves(const typename S::Weight& candidate,
                        const std::optional<typename S::Weight>& incumbent) {
  return !incumbent || S::better(candidate, *incumbent);
}

}  // namespace ntwfsm
