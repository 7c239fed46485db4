#pragma once

#include <map>
#include <vector>

#include "thimac/document.hpp"
#include "thimac/model.hpp"

namespace thimac {

// Stable diagnostic codes.
inline constexpr std::string_view kFlowIllegal = "W-FLOW-ILLEGAL";
inline constexpr std::string_view kTriggerSelf = "W-TRIGGER-SELF";
inline constexpr std::string_view kStageDangling = "W-STAGE-DANGLING";
inline constexpr std::string_view kCreateInflow = "E-CREATE-INFLOW";
inline constexpr std::string_view kMode = "E-MODE";

/// The flow relation of full notation.
/// Within one machine: create->process, create->release, receive->process,
/// receive->release, process->release, release->transfer, transfer->receive,
/// transfer->arrive, arrive->accept, accept->process, accept->release.
/// Between machines: transfer->transfer only.
bool full_flow_legal(StageKind from, StageKind to, bool same_machine);

/// Whether a cross-machine flow written in simplified notation has an
/// expansion into full notation, given the kinds present in the target machine.
bool simplified_cross_flow_legal(StageKind from, StageKind to, StageSet target_stages);

/// Well-formedness in the model's declared notation. Illegal flows and inflow
/// into create are errors; dangling stages and self-triggers are warnings.
/// Sorted by (element id, code).
std::vector<Diagnostic> validate_static(const StaticModel& model);

class DesugarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DesugarResult {
  StaticModel model;
  /// Each expanded simplified arc -> the full-notation arcs replacing it.
  std::map<ArcId, std::vector<ArcId>> expansion;
  /// Each expanded simplified arc -> every stage along its chain.
  std::map<ArcId, std::vector<StageRef>> chain_stages;
};

/// Expands every cross-machine simplified flow X.s -> Y.t into
/// X.s -> X.release -> X.transfer -> Y.transfer -> Y.receive -> Y.t, adding only
/// absent stages and reusing existing arcs. A final link into create becomes a
/// trigger. Throws DesugarError for full-notation or invalid input.
DesugarResult desugar(const StaticModel& model);

/// Desugars a document's model and rewrites subdiagrams that mention an
/// expanded arc so they cover the whole chain.
Document desugar_document(const Document& doc);

}  // namespace thimac
