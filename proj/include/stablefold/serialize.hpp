#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "stablefold/assembly.hpp"
#include "stablefold/braid.hpp"
#include "stablefold/morse.hpp"
#include "stablefold/validate.hpp"

namespace stablefold {

inline constexpr const char* kSchema = "stablefold/1";

enum class SerializeErrc { SchemaMismatch, Corrupted, Io };

const char* to_string(SerializeErrc code) noexcept;

class SerializeError : public std::runtime_error {
 public:
  SerializeError(SerializeErrc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  SerializeErrc code() const noexcept { return code_; }

 private:
  SerializeErrc code_;
};

using Json = nlohmann::json;

Json to_json(const BraidWord& word);
Json to_json(const MergeTree& tree);
Json to_json(const SectorTrace& trace);
Json to_json(const StableMapModel& model);
Json to_json(const SurgeredMapModel& model);
Json to_json(const ValidationReport& report);

// Inverses; throw SerializeError(Corrupted) naming the offending field.
BraidWord word_from_json(const Json& j);
MergeTree tree_from_json(const Json& j);
SectorTrace sector_from_json(const Json& j);
StableMapModel stable_model_from_json(const Json& j);
SurgeredMapModel surgered_model_from_json(const Json& j);

// Compact, keys sorted, one trailing newline.
std::string dump(const Json& j);

std::string serialize(const StableMapModel& model);
std::string serialize(const SurgeredMapModel& model);

using AnyModel = std::variant<StableMapModel, SurgeredMapModel>;

// Dispatches on "kind". Throws SchemaMismatch for a missing or foreign
// "schema" field, Corrupted for anything else that does not fit.
AnyModel parse_model(const std::string& text);

AnyModel read_model(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace stablefold
