#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "thimac/diagnostic.hpp"

namespace thimac {

using ThimacId = std::string;
using ArcId = std::string;
using EventId = std::string;

/// The generic actions of a thing/machine. Arrive and Accept refine Receive.
enum class StageKind : std::uint8_t { Create, Process, Release, Transfer, Receive, Arrive, Accept };

inline constexpr std::array<StageKind, 7> kAllStageKinds = {
    StageKind::Create,  StageKind::Process, StageKind::Release, StageKind::Transfer,
    StageKind::Receive, StageKind::Arrive,  StageKind::Accept};

std::string_view to_string(StageKind k);
std::optional<StageKind> parse_stage_kind(std::string_view s);

/// Set of stage kinds present in one machine; iterates in canonical kind order.
class StageSet {
 public:
  StageSet() = default;
  StageSet(std::initializer_list<StageKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  bool contains(StageKind k) const { return (bits_ >> static_cast<unsigned>(k)) & 1u; }
  void insert(StageKind k) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
  void erase(StageKind k) { bits_ &= static_cast<std::uint8_t>(~(1u << static_cast<unsigned>(k))); }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::uint8_t bits() const { return bits_; }
  std::vector<StageKind> kinds() const;

  friend bool operator==(StageSet, StageSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

/// A machine holds at most one stage per kind, so (thimac, kind) names a stage.
struct StageRef {
  ThimacId thimac;
  StageKind kind = StageKind::Create;

  friend bool operator==(const StageRef&, const StageRef&) = default;
  friend auto operator<=>(const StageRef&, const StageRef&) = default;
};

/// "thimac.kind"
std::string to_string(const StageRef& ref);

enum class ArcKind : std::uint8_t { Flow, Trigger };
enum class Notation : std::uint8_t { Full, Simplified };

std::string_view to_string(ArcKind k);

// ---------------------------------------------------------------------------
// Declarations: the unresolved form produced by the parser or by hand.

struct ThimacDecl {
  ThimacId id;
  std::string label;
  std::optional<ThimacId> parent;
  std::vector<StageKind> stages;
  bool memory = false;  // preserved, semantics-free
  std::vector<std::string> things;
  SourceSpan span;

  friend bool operator==(const ThimacDecl&, const ThimacDecl&) = default;
};

struct ArcDecl {
  ArcId id;
  ArcKind kind = ArcKind::Flow;
  StageRef from;
  StageRef to;
  SourceSpan span;

  friend bool operator==(const ArcDecl&, const ArcDecl&) = default;
};

/// Thimacs are listed flat in pre-order; nesting is carried by `parent`.
struct ModelDecl {
  std::string name = "empty";
  Notation notation = Notation::Full;
  std::vector<ThimacDecl> thimacs;
  std::vector<ArcDecl> arcs;
  SourceSpan span;

  friend bool operator==(const ModelDecl&, const ModelDecl&) = default;
};

// ---------------------------------------------------------------------------
// Resolved model.

struct Thimac {
  ThimacId id;
  std::string label;
  StageSet stages;
  bool memory = false;
  std::vector<std::string> things;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  SourceSpan span;
};

struct Arc {
  ArcId id;
  ArcKind kind = ArcKind::Flow;
  StageRef from;
  StageRef to;
  SourceSpan span;
};

/// Result of resolving a StageRef against a model.
struct StageLookup {
  bool found = false;
  const Thimac* owner = nullptr;  // set whenever the thimac exists
};

/// The static diagram: a forest of thimacs plus flow and trigger arcs.
/// Immutable once built; every arc endpoint resolves.
class StaticModel {
 public:
  StaticModel() = default;

  const std::string& name() const { return name_; }
  Notation notation() const { return notation_; }

  /// All thimacs in pre-order (parents before children, siblings in order).
  std::span<const Thimac> thimacs() const { return thimacs_; }
  std::span<const Arc> arcs() const { return arcs_; }
  const std::vector<std::size_t>& roots() const { return roots_; }

  const Thimac* find_thimac(std::string_view id) const;
  std::optional<std::size_t> thimac_index(std::string_view id) const;
  const Arc* find_arc(std::string_view id) const;

  StageLookup lookup(const StageRef& ref) const;
  bool has_stage(const StageRef& ref) const { return lookup(ref).found; }

  /// Every stage in model order (thimac pre-order, then kind order).
  std::vector<StageRef> stages() const;

  std::size_t stage_count() const;

 private:
  friend StaticModel build_model(const ModelDecl& decl);

  std::string name_;
  Notation notation_ = Notation::Full;
  std::vector<Thimac> thimacs_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> roots_;
  std::unordered_map<std::string, std::size_t> thimac_index_;
  std::unordered_map<std::string, std::size_t> arc_index_;
};

/// Resolution failures from build_model.
/// Codes: E-DUPLICATE-ID, E-UNRESOLVED-REF, E-CONTAINMENT-CYCLE,
/// E-DUPLICATE-STAGE, E-STAGE-REFINE.
class BuildError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

/// Resolves declarations into a StaticModel. Throws BuildError listing every
/// resolution problem found.
StaticModel build_model(const ModelDecl& decl);

/// Inverse of build_model: flat pre-order declarations, stages in kind order.
ModelDecl to_decl(const StaticModel& model);

}  // namespace thimac
