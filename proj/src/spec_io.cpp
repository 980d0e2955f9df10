#include "assouad/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace assouad {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw spec_error("spec error at " + where + ": " + what);
}

std::string get_string(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) fail(where, "missing field '" + key + "'");
    const json& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(where, "field '" + key + "' must be a string");
}

} // namespace

IfsSpecDocument parse_ifs_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw spec_error(std::string("spec is not valid JSON: ") + e.what());
    }
    IfsSpecDocument doc;
    if (!j.is_object()) fail("top level", "expected a JSON object");
    doc.schema_version = j.value("schema_version", 1);
    if (doc.schema_version != 1)
        fail("schema_version", "unsupported version " + std::to_string(doc.schema_version));
    doc.name = j.value("name", "");
    if (!j.contains("ambient_dim")) fail("top level", "missing field 'ambient_dim'");
    doc.ambient_dim = j.at("ambient_dim").get<int>();
    if (doc.ambient_dim != 1 && doc.ambient_dim != 2)
        fail("ambient_dim", "must be 1 or 2");

    if (!j.contains("backend")) fail("top level", "missing field 'backend'");
    const json& be = j.at("backend");
    std::string kind = be.is_object() ? be.value("kind", "") : be.get<std::string>();
    if (kind == "exact") {
        doc.backend = Backend::exact;
    } else if (kind == "float") {
        doc.backend = Backend::floating;
        doc.float_digits = be.is_object() ? be.value("digits", kDefaultFloatDigits)
                                          : kDefaultFloatDigits;
        if (doc.float_digits < 6 || doc.float_digits > 10000)
            fail("backend.digits", "digits must lie in [6, 10000]");
    } else {
        fail("backend.kind", "must be 'exact' or 'float'");
    }

    doc.note = j.value("note", "");
    if (!j.contains("maps") || !j.at("maps").is_array() || j.at("maps").empty())
        fail("maps", "need a nonempty array of maps");
    int idx = 0;
    for (const json& jm : j.at("maps")) {
        ++idx;
        std::string where = "maps[" + std::to_string(idx) + "]";
        MapSpec m;
        m.ratio = get_string(jm, "ratio", where);
        if (doc.ambient_dim == 1) {
            m.sign = jm.value("sign", 1);
            if (m.sign != 1 && m.sign != -1) fail(where + ".sign", "must be +1 or -1");
        } else {
            if (jm.contains("rotation_degrees"))
                m.rotation_degrees = get_string(jm, "rotation_degrees", where);
            m.reflect = jm.value("reflect", false);
        }
        if (!jm.contains("translation") || !jm.at("translation").is_array())
            fail(where, "missing 'translation' array");
        for (const json& t : jm.at("translation")) {
            if (t.is_string())
                m.translation.push_back(t.get<std::string>());
            else if (t.is_number_integer())
                m.translation.push_back(std::to_string(t.get<long long>()));
            else
                fail(where + ".translation", "entries must be numeric strings");
        }
        if (static_cast<int>(m.translation.size()) != doc.ambient_dim)
            fail(where + ".translation",
                 "expected " + std::to_string(doc.ambient_dim) + " coordinates, got " +
                     std::to_string(m.translation.size()));
        doc.maps.push_back(std::move(m));
    }
    return doc;
}

std::string serialize_ifs_spec(const IfsSpecDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    j["name"] = doc.name;
    j["ambient_dim"] = doc.ambient_dim;
    if (doc.backend == Backend::exact) {
        j["backend"] = {{"kind", "exact"}};
    } else {
        j["backend"] = {{"kind", "float"}, {"digits", doc.float_digits}};
    }
    if (!doc.note.empty()) j["note"] = doc.note;
    j["maps"] = json::array();
    for (const MapSpec& m : doc.maps) {
        json jm;
        jm["ratio"] = m.ratio;
        if (doc.ambient_dim == 1) {
            jm["sign"] = m.sign;
        } else {
            jm["rotation_degrees"] = m.rotation_degrees;
            jm["reflect"] = m.reflect;
        }
        jm["translation"] = m.translation;
        j["maps"].push_back(std::move(jm));
    }
    return j.dump(2) + "\n";
}

IfsSystem build_system(const IfsSpecDocument& doc) {
    std::vector<Similarity> maps;
    int idx = 0;
    for (const MapSpec& m : doc.maps) {
        ++idx;
        std::string where = "maps[" + std::to_string(idx) + "]";
        Scalar ratio;
        try {
            ratio = Scalar::parse(m.ratio, doc.backend, doc.float_digits);
        } catch (const spec_error& e) {
            fail(where + ".ratio", e.what());
        }
        Scalar one = Scalar::one_like(ratio);
        if (ratio.sign() <= 0 || ratio >= one)
            fail(where + ".ratio", "ratio outside (0,1): " + m.ratio);
        try {
            if (doc.ambient_dim == 1) {
                Scalar tx = Scalar::parse(m.translation[0], doc.backend, doc.float_digits);
                maps.push_back(Similarity::line(ratio, m.sign, tx));
            } else {
                Scalar ang =
                    Scalar::parse(m.rotation_degrees, doc.backend, doc.float_digits);
                Scalar tx = Scalar::parse(m.translation[0], doc.backend, doc.float_digits);
                Scalar ty = Scalar::parse(m.translation[1], doc.backend, doc.float_digits);
                maps.push_back(Similarity::plane(ratio, ang, m.reflect, tx, ty));
            }
        } catch (const spec_error& e) {
            fail(where, e.what());
        }
    }
    IfsSystem sys(doc.ambient_dim, std::move(maps), doc.name, doc.maps.size() == 1);
    sys.set_note(doc.note);
    return sys;
}

IfsSpecDocument load_spec(const std::string& path_or_name) {
    std::ifstream in(path_or_name);
    if (in.good()) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_ifs_spec(buf.str());
    }
    return registry_spec(path_or_name);
}

} // namespace assouad
