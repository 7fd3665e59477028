#include "coach/prompts/catalog.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "coach/prompts/embedded.hpp"
#include "coach/util/sha256.hpp"

namespace coach::prompts {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PromptCatalogError(fmt::format("cannot read prompt asset {}", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string strip_trailing_newlines(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    return std::string(text);
}

}  // namespace

std::string fill(std::string text, std::string_view slot, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = text.find(slot, pos)) != std::string::npos) {
        text.replace(pos, slot.size(), value);
        pos += value.size();
    }
    return text;
}

const PromptCatalog& PromptCatalog::embedded() {
    static const PromptCatalog catalog = [] {
        std::map<std::string, std::string, std::less<>> files;
        for (const auto& a : detail::embedded_assets()) files.emplace(std::string(a.name), std::string(a.content));
        return from_files(std::move(files));
    }();
    return catalog;
}

PromptCatalog PromptCatalog::from_directory(const std::filesystem::path& dir) {
    std::map<std::string, std::string, std::less<>> files;
    files.emplace(std::string(asset::kManifest), read_file(dir / asset::kManifest));
    const auto manifest = nlohmann::json::parse(files.at(std::string(asset::kManifest)));
    for (const auto& [name, digest] : manifest.at("files").items()) {
        files.emplace(name, read_file(dir / name));
    }
    return from_files(std::move(files));
}

PromptCatalog PromptCatalog::from_files(std::map<std::string, std::string, std::less<>> files) {
    const auto manifest_it = files.find(asset::kManifest);
    if (manifest_it == files.end()) throw PromptCatalogError("prompt catalog has no manifest.json");

    PromptCatalog catalog;
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(manifest_it->second);
        catalog.version_ = manifest.at("version").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw PromptCatalogError(fmt::format("invalid prompt manifest: {}", e.what()));
    }
    catalog.checksum_ = util::sha256_hex(manifest_it->second);

    for (const auto& [name, digest] : manifest.at("files").items()) {
        const auto file = files.find(name);
        if (file == files.end()) throw PromptCatalogError(fmt::format("prompt asset '{}' is missing", name));
        const auto actual = util::sha256_hex(file->second);
        if (actual != digest.get<std::string>()) {
            throw PromptCatalogError(fmt::format("prompt asset '{}' fails its checksum (expected {}, got {})", name,
                                                 digest.get<std::string>(), actual));
        }
        catalog.texts_.emplace(name, strip_trailing_newlines(file->second));
    }

    const std::array<std::string_view, 14> required{
        asset::kSystem,         asset::kStateClassifySystem,  asset::kStateClassifyAgent,
        asset::kStrategyPredictInstructions, asset::kStrategyDescriptions, asset::kStrategyPredictAgent,
        asset::kResponseGenerateInstructions, asset::kToolExamples, asset::kResponseGenerateAgent,
        asset::kToolNeedInstructions, asset::kToolNeedAgent,  asset::kToolCallInstructions,
        asset::kToolCallAgent,  asset::kMiCoding,
    };
    for (auto name : required) (void)catalog.text(name);
    for (auto name : asset::kStates) (void)catalog.text(name);

    // One paragraph per strategy, "<Display Name>: ...".
    const auto& descriptions = catalog.text(asset::kStrategyDescriptions);
    for (const auto& s : mi::strategy_catalog()) {
        const auto prefix = fmt::format("{}: ", s.display_name);
        const auto start = descriptions.find(prefix);
        if (start == std::string::npos || (start > 0 && descriptions[start - 1] != '\n')) {
            throw PromptCatalogError(fmt::format("strategy descriptions lack an entry for '{}'", s.display_name));
        }
        const auto stop = descriptions.find('\n', start);
        catalog.strategy_lines_[mi::index_of(s.id)] =
            descriptions.substr(start, stop == std::string::npos ? std::string::npos : stop - start);
    }
    return catalog;
}

const std::string& PromptCatalog::text(std::string_view name) const {
    const auto it = texts_.find(name);
    if (it == texts_.end()) throw PromptCatalogError(fmt::format("prompt asset '{}' is not in the catalog", name));
    return it->second;
}

const std::string& PromptCatalog::state_prompt(dialogue::DialogueStateId state) const {
    return text(asset::kStates[dialogue::index_of(state)]);
}

const std::string& PromptCatalog::strategy_description(mi::InternalStrategy strategy) const {
    return strategy_lines_[mi::index_of(strategy)];
}

std::string PromptCatalog::strategy_list() const {
    std::string out;
    for (const auto& s : mi::strategy_catalog()) {
        if (!out.empty()) out += ", ";
        out += s.display_name;
    }
    return out;
}

}  // namespace coach::prompts
