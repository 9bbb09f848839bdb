#include <json.hpp>

#include "yamabe/ding.hpp"
#include "yamabe/profile.hpp"

namespace yamabe {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json vec(const std::vector<double>& v) { return json(v); }

std::vector<double> vec_of(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw Error(ErrorCode::io_error, std::string("profile document missing array '") + key + "'");
    return j[key].get<std::vector<double>>();
}

}  // namespace

std::string profile_to_json(const ProfilePtr& v) {
    if (!v) throw Error(ErrorCode::invalid_argument, "null profile");
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = v->n();
    j["generator"] = v->generator();
    switch (v->kind()) {
        case ProfileKind::closed_form_standard: {
            const auto* b = dynamic_cast<const StandardBubble*>(v.get());
            if (!b) throw Error(ErrorCode::io_error, "closed-form profile of unexpected type");
            j["kind"] = "closed_form_standard";
            j["mu"] = b->mu();
            j["sign"] = b->sign();
            break;
        }
        case ProfileKind::numeric_radial: {
            const auto* r = dynamic_cast<const NumericRadialProfile*>(v.get());
            if (!r) throw Error(ErrorCode::io_error, "wrapped profiles are not serializable; sample them first");
            j["kind"] = "numeric_radial";
            j["r"] = vec(r->grid());
            j["v"] = vec(r->samples());
            j["dv"] = vec(r->slopes());
            break;
        }
        case ProfileKind::numeric_biradial: {
            const auto* d = dynamic_cast<const DingPullbackProfile*>(v.get());
            if (!d) throw Error(ErrorCode::io_error, "wrapped profiles are not serializable; sample them first");
            const LatitudeSolution& sol = d->latitude();
            j["kind"] = "numeric_biradial";
            j["p"] = sol.p;
            j["q"] = sol.q;
            j["a0"] = sol.a0;
            j["nodes"] = sol.nodes;
            j["residual_sup"] = sol.residual_sup;
            j["energy"] = sol.energy;
            j["t"] = vec(sol.t);
            j["u"] = vec(sol.u);
            j["du"] = vec(sol.du);
            break;
        }
    }
    return j.dump(2);
}

ProfilePtr profile_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::io_error, std::string("profile document is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version"))
        throw Error(ErrorCode::io_error, "profile document has no schema_version");
    if (j["schema_version"].get<int>() != kSchemaVersion)
        throw Error(ErrorCode::io_error, "unsupported profile schema version");
    const std::string kind = j.value("kind", "");
    try {
        if (kind == "closed_form_standard") {
            return standard_bubble(j.at("n").get<int>(), j.value("mu", 1.0), j.value("sign", 1));
        }
        if (kind == "numeric_radial") {
            return std::make_shared<NumericRadialProfile>(j.at("n").get<int>(), vec_of(j, "r"), vec_of(j, "v"),
                                                          vec_of(j, "dv"), j.value("generator", "numeric-radial"));
        }
        if (kind == "numeric_biradial") {
            LatitudeSolution sol;
            sol.p = j.at("p").get<int>();
            sol.q = j.at("q").get<int>();
            sol.a0 = j.value("a0", 0.0);
            sol.nodes = j.value("nodes", 0);
            sol.residual_sup = j.value("residual_sup", 0.0);
            sol.energy = j.value("energy", 0.0);
            sol.t = vec_of(j, "t");
            sol.u = vec_of(j, "u");
            sol.du = vec_of(j, "du");
            if (sol.t.size() != sol.u.size() || sol.t.size() != sol.du.size())
                throw Error(ErrorCode::io_error, "latitude grids have mismatched lengths");
            return pullback(sol);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::io_error, std::string("malformed profile document: ") + e.what());
    }
    throw Error(ErrorCode::io_error, "unknown profile kind '" + kind + "'");
}

}  // namespace yamabe
