#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "poker/hand_record.hpp"

namespace poker {

// A line of input the parser did not consume, or a per-hand failure.
struct Diagnostic {
  std::string source;  // file name, may be empty
  std::size_t line = 0;
  std::string message;

  std::string to_string() const;  // "file:line: message"
};

class HandParseError : public std::runtime_error {
 public:
  enum class Kind { Structural, Semantic };
  HandParseError(Kind kind, std::size_t line, const std::string& message);
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

struct ParsedHand {
  HandRecord record;
  std::string raw_text;
  std::size_t first_line = 1;
  std::vector<Diagnostic> ignored;  // unconsumed lines kept as diagnostics
};

struct ParsedFile {
  std::vector<ParsedHand> hands;
  std::vector<Diagnostic> diagnostics;  // ignored lines and failed hands
};

// One hand block. first_line offsets reported line numbers.
ParsedHand parse_hand_block(std::string_view text, std::size_t first_line = 1);
HandRecord parse_hand(std::string_view text);

ParsedFile parse_file(std::string_view text, std::string_view source_name = {});
// Throws std::runtime_error when the file cannot be read.
ParsedFile parse_path(const std::filesystem::path& path);

bool has_revealed_showdown(const HandRecord& record);

// Renders the record in the hand-history text layout parse_hand reads.
std::string serialize_hand(const HandRecord& record);

// hand_record.v1 JSON lines.
inline constexpr std::string_view kHandRecordSchema = "hand_record.v1";
nlohmann::json hand_to_json(const HandRecord& record, std::string_view raw_text = {});
HandRecord hand_from_json(const nlohmann::json& j);
std::string raw_text_from_json(const nlohmann::json& j);

void write_hands_jsonl(const std::filesystem::path& path, const std::vector<ParsedHand>& hands);
std::vector<ParsedHand> read_hands_jsonl(const std::filesystem::path& path);

}  // namespace poker
