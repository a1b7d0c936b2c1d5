#include <fstream>

#include <json.hpp>

#include "combimots/space.hpp"

namespace combimots {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& path, int lineno) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what(),
                         lineno);
    }
}

}  // namespace

std::vector<BuildingBlock> load_blocks(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open blocks file: " + path, 0);
    }
    std::vector<BuildingBlock> blocks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = parse_line(line, path, lineno);
        BuildingBlock block;
        try {
            block.id = j.at("id").get<std::string>();
            for (const auto& tag : j.at("tags")) {
                block.tags.insert(tag.get<std::string>());
            }
            block.fingerprint = Fingerprint::from_hex(j.at("fp").get<std::string>());
            if (j.contains("scores")) {
                const auto& scores = j.at("scores");
                ObjectiveVector v(static_cast<Index>(scores.size()));
                for (std::size_t d = 0; d < scores.size(); ++d) {
                    v[static_cast<Index>(d)] = scores[d].get<double>();
                }
                block.precomputed = v;
            }
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what(),
                             lineno);
        }
        if (block.tags.empty()) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": block has empty tag set",
                             lineno);
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

void write_blocks(const std::string& path, const std::vector<BuildingBlock>& blocks) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open output file: " + path);
    }
    for (const auto& block : blocks) {
        json j;
        j["id"] = block.id;
        j["tags"] = block.tags;
        j["fp"] = block.fingerprint.to_hex();
        if (block.precomputed) {
            std::vector<double> scores(block.precomputed->data(),
                                       block.precomputed->data() +
                                           block.precomputed->size());
            j["scores"] = scores;
        }
        out << j.dump() << "\n";
    }
}

std::vector<ReactionTemplate> load_templates(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open templates file: " + path, 0);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
    std::vector<ReactionTemplate> templates;
    for (const auto& item : doc) {
        ReactionTemplate tmpl;
        try {
            tmpl.id = item.at("id").get<std::string>();
            for (const auto& slot : item.at("slots")) {
                std::set<std::string> tags;
                for (const auto& tag : slot) tags.insert(tag.get<std::string>());
                if (tags.empty()) {
                    throw ParseError(path + ": template " + tmpl.id +
                                         " has an empty slot tag-set",
                                     0);
                }
                tmpl.slots.push_back(std::move(tags));
            }
            tmpl.product_tag = item.at("product_tag").get<std::string>();
            const std::string combine = item.value("combine", std::string("or"));
            if (combine != "or") {
                throw ParseError(path + ": unknown combine rule: " + combine, 0);
            }
        } catch (const json::exception& e) {
            throw ParseError(path + ": " + e.what(), 0);
        }
        if (tmpl.slots.empty() || tmpl.slots.size() > 3) {
            throw ParseError(path + ": template " + tmpl.id +
                                 " arity must be between 1 and 3",
                             0);
        }
        templates.push_back(std::move(tmpl));
    }
    return templates;
}

std::vector<Fingerprint> load_fragments(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open fragments file: " + path, 0);
    }
    std::vector<Fingerprint> fragments;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = parse_line(line, path, lineno);
        try {
            fragments.push_back(Fingerprint::from_hex(j.at("fp").get<std::string>()));
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what(),
                             lineno);
        }
    }
    return fragments;
}

}  // namespace combimots
