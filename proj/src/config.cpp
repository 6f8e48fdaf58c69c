#include "subtile/config.hpp"

#include <fstream>
#include <json.hpp>

#include "subtile/errors.hpp"

namespace subtile {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#222222"};

Substitution from_json(const ordered_json& j) {
    Substitution sub;
    try {
        sub.name = j.at("name").get<std::string>();
        sub.dim = j.at("dimension").get<int>();
        if (j.contains("expansion") && !j.at("expansion").is_null())
            sub.expansion = j.at("expansion").get<int>();
        std::vector<int> id_to_index;
        for (const auto& p : j.at("prototiles")) {
            Prototile t;
            t.id = p.at("id").get<int>();
            auto ext = p.at("extent");
            if (!ext.is_array() || static_cast<int>(ext.size()) != sub.dim)
                throw ParseError("prototile extent must have one entry per dimension");
            t.extent[0] = ext[0].get<int>();
            t.extent[1] = sub.dim == 2 ? ext[1].get<int>() : 1;
            if (p.contains("color")) t.color = p.at("color").get<std::string>();
            sub.prototiles.push_back(t);
        }
        int m = static_cast<int>(sub.prototiles.size());
        auto index_of = [&](int id) {
            for (int t = 0; t < m; ++t)
                if (sub.prototiles[t].id == id) return t;
            throw ParseError("unknown prototile id " + std::to_string(id));
        };
        for (int t = 0; t < m; ++t)
            if (sub.prototiles[t].id < 1 || sub.prototiles[t].id > m)
                throw ParseError("prototile ids must be 1..m");
        sub.rules.resize(m);
        std::vector<bool> seen(m, false);
        for (const auto& r : j.at("rules")) {
            int parent = index_of(r.at("parent").get<int>());
            if (seen[parent]) throw ParseError("duplicate rule for prototile");
            seen[parent] = true;
            for (const auto& c : r.at("children")) {
                Child ch;
                ch.type = index_of(c.at("type").get<int>());
                auto off = c.at("offset");
                if (!off.is_array() || static_cast<int>(off.size()) != sub.dim)
                    throw ParseError("child offset must have one entry per dimension");
                ch.offset[0] = off[0].get<long long>();
                ch.offset[1] = sub.dim == 2 ? off[1].get<long long>() : 0;
                sub.rules[parent].children.push_back(ch);
            }
        }
        if (j.contains("asserted_nonperiodic"))
            sub.asserted_nonperiodic = j.at("asserted_nonperiodic").get<bool>();
        if (j.contains("provenance")) sub.provenance = j.at("provenance").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    for (size_t t = 0; t < sub.prototiles.size(); ++t)
        if (sub.prototiles[t].color.empty())
            sub.prototiles[t].color = kPalette[t % (sizeof(kPalette) / sizeof(kPalette[0]))];
    finalize_substitution(sub);
    return sub;
}

}  // namespace

Substitution parse_config_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return from_json(j);
}

Substitution parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_string(text);
}

std::string emit_config(const Substitution& sub) {
    ordered_json j;
    j["name"] = sub.name;
    j["dimension"] = sub.dim;
    if (sub.expansion >= 2) j["expansion"] = sub.expansion;
    j["prototiles"] = ordered_json::array();
    for (const Prototile& p : sub.prototiles) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["extent"] = sub.dim == 2 ? ordered_json::array({p.extent[0], p.extent[1]})
                                    : ordered_json::array({p.extent[0]});
        pj["color"] = p.color;
        j["prototiles"].push_back(pj);
    }
    j["rules"] = ordered_json::array();
    for (int parent = 0; parent < sub.num_types(); ++parent) {
        ordered_json rj;
        rj["parent"] = sub.prototiles[parent].id;
        rj["children"] = ordered_json::array();
        for (const Child& c : sub.rules[parent].children) {
            ordered_json cj;
            cj["type"] = sub.prototiles[c.type].id;
            cj["offset"] = sub.dim == 2 ? ordered_json::array({c.offset[0], c.offset[1]})
                                        : ordered_json::array({c.offset[0]});
            rj["children"].push_back(cj);
        }
        j["rules"].push_back(rj);
    }
    j["asserted_nonperiodic"] = sub.asserted_nonperiodic;
    j["provenance"] = sub.provenance;
    return j.dump(2) + "\n";
}

std::vector<std::string> builtin_names() { return {"table", "ab42", "sym95"}; }

Substitution builtin_substitution(const std::string& name) {
    Substitution sub;
    sub.name = name;
    if (name == "table") {
        sub.dim = 2;
        sub.expansion = 2;
        sub.prototiles = {{1, {1, 2}, "#667788"}, {2, {2, 1}, "#eeeedd"}};
        // vertical domino splits into two horizontals below two verticals
        sub.rules.resize(2);
        sub.rules[0].children = {{1, {0, 0}}, {1, {0, 1}}, {0, {0, 2}}, {0, {1, 2}}};
        sub.rules[1].children = {{0, {0, 0}}, {0, {1, 0}}, {1, {2, 0}}, {1, {2, 1}}};
        sub.asserted_nonperiodic = true;
        sub.provenance = "classic rectangle-splitting rule; aperiodicity taken from the literature";
    } else if (name == "ab42") {
        sub.dim = 1;
        sub.expansion = 4;
        sub.prototiles = {{1, {1, 1}, "#4477aa"}, {2, {1, 1}, "#ee6677"}};
        sub.rules.resize(2);
        sub.rules[0].children = {{0, {0, 0}}, {0, {1, 0}}, {0, {2, 0}}, {1, {3, 0}}};
        sub.rules[1].children = {{0, {0, 0}}, {1, {1, 0}}, {1, {2, 0}}, {1, {3, 0}}};
        sub.asserted_nonperiodic = true;
        sub.provenance = "a -> aaab, b -> abbb; heuristic period scan finds no period";
    } else if (name == "sym95") {
        sub.dim = 2;
        sub.expansion = 3;
        sub.prototiles = {{1, {1, 1}, "#4477aa"}, {2, {1, 1}, "#ccbb44"}};
        sub.rules.resize(2);
        // 3x3 coloring, origin at the lower-left; the second rule is the
        // color swap of the first.
        sub.rules[0].children = {{0, {0, 0}}, {0, {1, 0}}, {1, {2, 0}},
                                 {0, {0, 1}}, {1, {1, 1}}, {0, {2, 1}},
                                 {0, {0, 2}}, {0, {1, 2}}, {0, {2, 2}}};
        sub.rules[1].children = {{1, {0, 0}}, {1, {1, 0}}, {0, {2, 0}},
                                 {1, {0, 1}}, {0, {1, 1}}, {1, {2, 1}},
                                 {1, {0, 2}}, {1, {1, 2}}, {1, {2, 2}}};
        sub.asserted_nonperiodic = true;
        sub.provenance = "two-color 3x3 swap rule; aperiodicity asserted, heuristic evidence only";
    } else {
        throw ParseError("unknown builtin '" + name + "' (available: table, ab42, sym95)");
    }
    finalize_substitution(sub);
    return sub;
}

CylindricalFunction default_function(const Substitution& sub, const std::vector<double>& freq) {
    int m = sub.num_types();
    std::vector<double> raw(m);
    for (int t = 0; t < m; ++t) raw[t] = t % 2 == 0 ? 1.0 : -1.0;
    double mean = 0;
    for (int t = 0; t < m; ++t) mean += freq[t] * raw[t] * sub.volume(t);
    for (int t = 0; t < m; ++t) raw[t] -= mean;
    return CylindricalFunction::constants(sub, raw, "pm1");
}

}  // namespace subtile
