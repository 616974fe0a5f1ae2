#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rru {

// Interned atom / functor name. Interning is process-wide and thread-safe;
// the fixed symbols below are pre-registered at stable indices.
class Symbol {
 public:
  constexpr Symbol() = default;
  explicit constexpr Symbol(std::uint32_t index) : index_(index) {}

  static Symbol intern(std::string_view name);
  const std::string& name() const;
  constexpr std::uint32_t index() const { return index_; }

  friend constexpr bool operator==(Symbol a, Symbol b) { return a.index_ == b.index_; }
  friend constexpr bool operator!=(Symbol a, Symbol b) { return a.index_ != b.index_; }

 private:
  std::uint32_t index_ = 0;
};

namespace sym {
// Order must match the table in symbol.cpp.
inline constexpr Symbol kTrue{0};
inline constexpr Symbol kComma{1};
inline constexpr Symbol kNil{2};
inline constexpr Symbol kDot{3};
inline constexpr Symbol kEq{4};
inline constexpr Symbol kNotEq{5};
inline constexpr Symbol kIs{6};
inline constexpr Symbol kLt{7};
inline constexpr Symbol kGt{8};
inline constexpr Symbol kLe{9};
inline constexpr Symbol kGe{10};
inline constexpr Symbol kPlus{11};
inline constexpr Symbol kMinus{12};
inline constexpr Symbol kTimes{13};
inline constexpr Symbol kAppend{14};
inline constexpr Symbol kMerge{15};
inline constexpr Symbol kClean{16};
inline constexpr Symbol kNeck{17};  // ":-"
}  // namespace sym

}  // namespace rru
