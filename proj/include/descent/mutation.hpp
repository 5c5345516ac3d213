#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace descent {

/// Deliberate corruptions threaded through the builders so the suites can
/// show that each one is caught.
enum class Mutation {
  None,
  BrokenMu,             // multiplication twisted by a fiber swap
  InvertedTheta,        // theta replaced by its inverse
  DroppedCocycle,       // descent data enumerated without the cocycle filter
  WrongFaceConvention,  // d0 and d1 exchanged
  NonNaturalRho,        // descent morphisms not required to commute with rho
  BrokenTriangle,       // counit twisted by a fiber swap
};

inline constexpr std::array<Mutation, 6> all_mutations = {
    Mutation::BrokenMu,      Mutation::InvertedTheta,  Mutation::DroppedCocycle,
    Mutation::WrongFaceConvention, Mutation::NonNaturalRho, Mutation::BrokenTriangle};

inline std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::BrokenMu: return "broken-mu";
    case Mutation::InvertedTheta: return "inverted-theta";
    case Mutation::DroppedCocycle: return "dropped-cocycle";
    case Mutation::WrongFaceConvention: return "wrong-face-convention";
    case Mutation::NonNaturalRho: return "non-natural-rho";
    case Mutation::BrokenTriangle: return "broken-triangle";
  }
  return "?";
}

inline std::optional<Mutation> parse_mutation(std::string_view s) {
  if (s == "none") return Mutation::None;
  for (auto m : all_mutations)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

}  // namespace descent
