#ifndef PREVCALC_DOCUMENT_HPP
#define PREVCALC_DOCUMENT_HPP

#include "prevcalc/polarity.hpp"
#include "prevcalc/powercone.hpp"
#include "prevcalc/transforms.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace prevcalc {

inline constexpr int kDocumentVersion = 1;

/// Malformed document; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrevisionDocument {
  Prevision prevision;
  std::optional<Flavor> flavor;
  friend bool operator==(const PrevisionDocument&, const PrevisionDocument&) = default;
};

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json prevision_to_json(const Prevision& p, std::optional<Flavor> flavor = std::nullopt);
PrevisionDocument prevision_from_json(const nlohmann::json& j);

nlohmann::json smyth_to_json(const SmythGen& s);
nlohmann::json hoare_to_json(const HoareGen& h);
SmythGen smyth_from_json(const nlohmann::json& j);
HoareGen hoare_from_json(const nlohmann::json& j);

nlohmann::json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const nlohmann::json& j);

nlohmann::json poset_to_json(const FinitePoset& p);
FinitePoset poset_from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_document(const nlohmann::json& j);
/// Throws ParseError on syntax errors.
nlohmann::json parse_document(const std::string& text);
nlohmann::json read_document_file(const std::string& path);

}  // namespace prevcalc

#endif  // PREVCALC_DOCUMENT_HPP
