#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mlines/collinear_ordering.hpp"
#include "mlines/line_enumeration.hpp"
#include "mlines/pair_structure.hpp"
#include "mlines/witness_extraction.hpp"

namespace mlines {

using nlohmann::json;

inline json pair_to_json(const PointPair& e) { return json::array({e.lo, e.hi}); }

inline json pairs_to_json(const std::vector<PointPair>& pairs) {
  json out = json::array();
  for (const PointPair& e : pairs) out.push_back(pair_to_json(e));
  return out;
}

inline json to_json(const LineCatalog& catalog) {
  json lines = json::array();
  for (const LineEntry& e : catalog.entries())
    lines.push_back({{"line", e.line}, {"generators", pairs_to_json(e.generators)}});
  json doc = {{"n", catalog.point_count()}, {"line_count", catalog.line_count()}, {"lines", std::move(lines)}};
  doc["universal"] = catalog.universal() ? json(catalog.universal()->line) : json(nullptr);
  return doc;
}

inline json to_json(const ChenChvatalCheck& c) {
  return {{"universal", c.universal}, {"line_count", c.line_count}, {"holds", c.holds}};
}

inline json to_json(const PairRelation& r) {
  json doc = {{"kind", relation_kind_name(r.kind)},
              {"first", pair_to_json(r.first)},
              {"second", pair_to_json(r.second)},
              {"labeling", std::vector<PointId>(r.labeling().begin(), r.labeling().end())}};
  if (r.kind == RelationKind::Red || r.kind == RelationKind::Purple) {
    doc["x"] = r.x;
    doc["y"] = r.y;
  }
  return doc;
}

inline json to_json(const LevelDecomposition& dec) {
  json levels = json::array();
  for (int k = 1; k <= dec.height; ++k) {
    json lvl = {{"k", k}, {"pairs", pairs_to_json(dec.level_pairs(k))}};
    if (k >= 2 && k <= dec.height - 1) {
      const GreenLevel& g = green_components(dec, k);
      lvl["Q"] = pairs_to_json(g.isolated);
      json comps = json::array();
      for (const auto& c : g.components) comps.push_back(pairs_to_json(c));
      lvl["components"] = std::move(comps);
    }
    levels.push_back(std::move(lvl));
  }
  return {{"line", dec.line},
          {"height", dec.height},
          {"levels", std::move(levels)},
          {"purple", pairs_to_json(dec.purple)},
          {"red", pairs_to_json(dec.red)}};
}

inline json to_json(const ComponentOrdering& ord) {
  return {{"component", pairs_to_json(ord.component)}, {"ordering", ord.sequence}, {"openings", ord.openings}};
}

inline json to_json(const std::vector<AuditFailure>& failures) {
  json out = json::array();
  for (const auto& f : failures) out.push_back({{"claim", f.claim}, {"detail", f.detail}});
  return out;
}

inline json to_json(const Provenance& p) {
  return std::visit(
      [](const auto& step) -> json {
        using T = std::decay_t<decltype(step)>;
        if constexpr (std::is_same_v<T, ChainStep>) {
          return {{"i", step.i}, {"v_i", step.v}, {"v_next", step.v_next}, {"u_i", step.u}};
        } else if constexpr (std::is_same_v<T, StarStep>) {
          return {{"center", step.center}, {"u_i", step.u_i}, {"u_j", step.u_j}};
        } else {
          return {{"k", step.k}, {"component", step.component}, {"i", step.i},
                  {"a_i", step.a_i}, {"a_next", step.a_next}, {"u_i", step.u}};
        }
      },
      p);
}

inline json to_json(const WitnessFamily& fam) {
  json prov = json::array();
  for (const auto& p : fam.provenance) prov.push_back(to_json(p));
  json doc = {{"kind", witness_kind_name(fam.kind)},
              {"size", fam.size()},
              {"lines", fam.lines},
              {"provenance", std::move(prov)},
              {"certified", fam.certified()},
              {"violations", fam.violations},
              {"notes", fam.notes}};
  if (!fam.source_line.empty()) doc["source_line"] = fam.source_line;
  return doc;
}

inline json to_json(const WitnessReport& r) {
  json fams = json::array();
  for (const auto& f : r.families) fams.push_back(to_json(f));
  return {{"n", r.n},
          {"m", r.m},
          {"mode", r.mode == WitnessMode::Paper ? "paper" : "best"},
          {"branch", branch_name(r.branch)},
          {"families", std::move(fams)},
          {"certified_lower_bound", r.certified_lower_bound},
          {"best_family_size", r.best_family_size},
          {"notes", r.notes}};
}

}  // namespace mlines
