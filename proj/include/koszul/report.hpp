#ifndef KOSZUL_REPORT_HPP
#define KOSZUL_REPORT_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "koszul/bott.hpp"
#include "koszul/global.hpp"
#include "koszul/koszul.hpp"

namespace koszul {

/// Sorted-key JSON documents; dump() output is a pure function of the report.
using Json = nlohmann::json;

std::string version();

/// tool, version, command and the digest of the input bytes.
Json report_header(const std::string& command, std::string_view input);

Json to_json(const HomologyReport& r);
Json to_json(const CartanReport& r);
Json to_json(const HomotopyReport& r);
Json to_json(const GeneratorCount& g);
Json to_json(const ScanSummary& s);
Json to_json(const GlobalHomologyReport& r);
Json to_json(const DimensionResult& r);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

std::string render(const HomologyReport& r);
std::string render(const CartanReport& r);
std::string render(const HomotopyReport& r);
std::string render(const ScanSummary& s);
std::string render(const DimensionResult& r);

}  // namespace koszul

#endif  // KOSZUL_REPORT_HPP
