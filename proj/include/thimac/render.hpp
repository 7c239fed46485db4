#pragma once

#include <set>
#include <stdexcept>
#include <string>

#include "thimac/document.hpp"

namespace thimac {

enum class RenderLevel { Static, Overlay, Behavior };

std::optional<RenderLevel> parse_render_level(std::string_view s);

struct RenderOptions {
  RenderLevel level = RenderLevel::Static;
  /// Thimac, stage ("t.kind"), arc, subdiagram or event ids to emphasize.
  std::set<std::string> highlight;
  bool nest_clusters = true;
  /// Behavior level: which chronology; empty means the first one.
  std::string chronology;
};

class UnknownHighlightId : public std::runtime_error {
 public:
  explicit UnknownHighlightId(const std::string& id)
      : std::runtime_error("unknown highlight id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// DOT text for one view of the document. Node ids are model ids; flow edges
/// are solid, trigger edges dashed. Output is byte-stable for equal input.
/// Throws BuildError/ChronologyError on an invalid document and
/// UnknownHighlightId when a highlight id names nothing in the rendered view.
std::string to_dot(const Document& doc, const RenderOptions& options = {});

}  // namespace thimac
