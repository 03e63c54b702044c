#include "opal/json_io.hpp"

#include <stdexcept>

namespace opal::json_io {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::invalid_argument(path + ": " + msg);
}

const json& member(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
    return *it;
}

i64 as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<i64>();
}

std::string as_str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

i64 int_member(const json& j, const std::string& path, const char* key) {
    return as_int(member(j, path, key), path + "." + key);
}

opcalc::Side side_member(const json& j, const std::string& path) {
    auto s = as_str(member(j, path, "side"), path + ".side");
    if (s == "coh") return opcalc::Side::Coh;
    if (s == "hom") return opcalc::Side::Hom;
    fail(path + ".side", "expected \"coh\" or \"hom\"");
}

const char* side_name(opcalc::Side s) {
    return s == opcalc::Side::Coh ? "coh" : "hom";
}

}  // namespace

// --- Steenrod elements ------------------------------------------------------

json element_to_json(const steenrod::Element& e) {
    json terms = json::array();
    for (auto& [m, c] : e.terms)
        terms.push_back(json{{"word", m.packed()}, {"coeff", c}});
    return json{{"p", e.p}, {"terms", std::move(terms)}};
}

steenrod::Element element_from_json(const json& j) {
    const std::string root = "$";
    i64 p = int_member(j, root, "p");
    if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(root + ".p", "expected an odd prime");
    steenrod::Element e(static_cast<int>(p));
    auto& terms = as_array(member(j, root, "terms"), root + ".terms");
    for (size_t t = 0; t < terms.size(); ++t) {
        std::string path = root + ".terms[" + std::to_string(t) + "]";
        auto& word = as_array(member(terms[t], path, "word"), path + ".word");
        std::vector<i64> packed;
        for (size_t u = 0; u < word.size(); ++u)
            packed.push_back(as_int(word[u], path + ".word[" + std::to_string(u) + "]"));
        steenrod::Monomial m;
        try {
            m = steenrod::Monomial::from_packed(packed);
        } catch (const std::exception& ex) {
            fail(path + ".word", ex.what());
        }
        i64 c = int_member(terms[t], path, "coeff");
        if (c % p == 0) fail(path + ".coeff", "coefficient vanishes mod p");
        e.add_term(m, c);
    }
    return e;
}

// --- graded modules ---------------------------------------------------------

namespace {

json trips_to_json(const std::vector<unstable::Trip>& ts) {
    json out = json::array();
    for (auto& t : ts) out.push_back(json::array({t.row, t.col, t.c}));
    return out;
}

std::vector<unstable::Trip> trips_from_json(const json& j, const std::string& path) {
    std::vector<unstable::Trip> out;
    auto& arr = as_array(j, path);
    for (size_t t = 0; t < arr.size(); ++t) {
        std::string p2 = path + "[" + std::to_string(t) + "]";
        auto& row = as_array(arr[t], p2);
        if (row.size() != 3) fail(p2, "expected [row, col, coeff]");
        out.push_back(unstable::Trip{as_int(row[0], p2 + "[0]"),
                                     as_int(row[1], p2 + "[1]"),
                                     static_cast<int>(as_int(row[2], p2 + "[2]"))});
    }
    return out;
}

}  // namespace

json module_to_json(const unstable::GradedFpModule& m) {
    json basis = json::array();
    for (auto& b : m.basis) basis.push_back(json{{"name", b.name}, {"deg", b.deg}});
    json powers = json::object();
    for (auto& [i, ts] : m.powers) powers[std::to_string(i)] = trips_to_json(ts);
    return json{{"p", m.p},
                {"basis", std::move(basis)},
                {"lo", m.lo},
                {"hi", m.hi},
                {"complete", m.complete},
                {"beta", trips_to_json(m.beta)},
                {"powers", std::move(powers)}};
}

unstable::GradedFpModule module_from_json(const json& j) {
    const std::string root = "$";
    unstable::GradedFpModule m;
    i64 p = int_member(j, root, "p");
    if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(root + ".p", "expected an odd prime");
    m.p = static_cast<int>(p);
    auto& basis = as_array(member(j, root, "basis"), root + ".basis");
    bool any = false;
    i64 dmin = 0, dmax = 0;
    for (size_t t = 0; t < basis.size(); ++t) {
        std::string path = root + ".basis[" + std::to_string(t) + "]";
        unstable::BasisClass b;
        b.name = as_str(member(basis[t], path, "name"), path + ".name");
        b.deg = int_member(basis[t], path, "deg");
        if (!any || b.deg < dmin) dmin = b.deg;
        if (!any || b.deg > dmax) dmax = b.deg;
        any = true;
        m.basis.push_back(std::move(b));
    }
    m.lo = j.contains("lo") ? as_int(j["lo"], root + ".lo") : dmin;
    m.hi = j.contains("hi") ? as_int(j["hi"], root + ".hi") : dmax;
    if (!any && !j.contains("lo")) { m.lo = 0; m.hi = -1; }
    m.complete = j.contains("complete")
                     ? as_bool(j["complete"], root + ".complete")
                     : true;
    if (j.contains("beta")) m.beta = trips_from_json(j["beta"], root + ".beta");
    if (j.contains("powers")) {
        auto& powers = j["powers"];
        if (!powers.is_object()) fail(root + ".powers", "expected an object");
        for (auto it = powers.begin(); it != powers.end(); ++it) {
            i64 e = 0;
            try {
                size_t used = 0;
                e = std::stoll(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                fail(root + ".powers", "key \"" + it.key() + "\" is not an integer");
            }
            if (e < 1) fail(root + ".powers", "exponents must be >= 1");
            m.powers[e] = trips_from_json(it.value(), root + ".powers." + it.key());
        }
    }
    return m;
}

// --- operation expressions --------------------------------------------------

json mono_to_json(const opcalc::Mono& m) {
    using opcalc::NodeKind;
    switch (m.kind) {
        case NodeKind::Leaf: {
            if (opcalc::is_unit(m))
                return json{{"op", "Leaf"}, {"side", side_name(m.side)}, {"unit", true}};
            json out{{"op", "Leaf"},
                     {"side", side_name(m.side)},
                     {"name", m.base.name},
                     {"deg", m.base.deg},
                     {"weight", m.base.weight},
                     {"susp", m.base.susp}};
            if (m.decorated) {
                out["power"] = m.q;
                out["bockstein"] = m.eps;
            }
            return out;
        }
        case NodeKind::Q: {
            return json{{"op", "DualQ"},
                        {"side", side_name(m.side)},
                        {"index", m.r},
                        {"arg", mono_to_json(*m.kids.at(0))}};
        }
        case NodeKind::L: {
            json args = json::array();
            for (auto& kid : m.kids) args.push_back(mono_to_json(*kid));
            return json{{"op", "DualBrowder"},
                        {"side", side_name(m.side)},
                        {"level", m.level},
                        {"args", std::move(args)}};
        }
        case NodeKind::Prod: {
            json args = json::array();
            for (auto& kid : m.kids) args.push_back(mono_to_json(*kid));
            return json{{"op", "Star"}, {"side", side_name(m.side)}, {"args", std::move(args)}};
        }
        case NodeKind::QU:
            throw std::invalid_argument(
                "upper-indexed operations have no serialization");
    }
    throw std::logic_error("unreachable node kind");
}

namespace {

opcalc::MonoPtr mono_from_json_at(const json& j, const std::string& path) {
    auto op = as_str(member(j, path, "op"), path + ".op");
    auto side = side_member(j, path);
    if (op == "Leaf") {
        if (j.contains("unit")) {
            if (as_bool(j["unit"], path + ".unit")) return opcalc::unit_leaf(side);
            fail(path + ".unit", "expected true when present");
        }
        opcalc::FormalClass c;
        c.name = as_str(member(j, path, "name"), path + ".name");
        c.deg = int_member(j, path, "deg");
        c.weight = j.contains("weight") ? as_int(j["weight"], path + ".weight") : 1;
        c.susp = j.contains("susp") ? as_int(j["susp"], path + ".susp") : 0;
        if (j.contains("power") || j.contains("bockstein")) {
            i64 q = j.contains("power") ? as_int(j["power"], path + ".power") : 0;
            i64 eps = j.contains("bockstein")
                          ? as_int(j["bockstein"], path + ".bockstein")
                          : 0;
            if (q < 0) fail(path + ".power", "expected a nonnegative integer");
            if (eps != 0 && eps != 1) fail(path + ".bockstein", "expected 0 or 1");
            return opcalc::decorated_leaf(side, c, q, static_cast<int>(eps));
        }
        return opcalc::leaf(side, c);
    }
    if (op == "DualQ") {
        i64 r = int_member(j, path, "index");
        return opcalc::q_raw(side, r,
                             mono_from_json_at(member(j, path, "arg"), path + ".arg"));
    }
    if (op == "DualBrowder" || op == "Star") {
        auto& args = as_array(member(j, path, "args"), path + ".args");
        if (args.empty()) fail(path + ".args", "expected at least one argument");
        std::vector<opcalc::MonoPtr> kids;
        for (size_t t = 0; t < args.size(); ++t)
            kids.push_back(
                mono_from_json_at(args[t], path + ".args[" + std::to_string(t) + "]"));
        if (op == "Star") return opcalc::star(side, std::move(kids));
        i64 level = int_member(j, path, "level");
        return opcalc::browder(side, level, std::move(kids));
    }
    fail(path + ".op",
         "expected one of \"Leaf\", \"DualQ\", \"DualBrowder\", \"Star\", \"Sum\"");
}

}  // namespace

opcalc::MonoPtr mono_from_json(const json& j) { return mono_from_json_at(j, "$"); }

json expr_to_json(const opcalc::Lin& l) {
    json terms = json::array();
    for (auto& [m, c] : l.terms)
        terms.push_back(json{{"coeff", c}, {"term", mono_to_json(*m)}});
    return json{{"op", "Sum"}, {"terms", std::move(terms)}};
}

opcalc::Lin expr_from_json(const json& j) {
    const std::string root = "$";
    auto op = as_str(member(j, root, "op"), root + ".op");
    opcalc::Lin out;
    if (op != "Sum") {
        // a bare monomial reads as the one-term combination
        out.terms.emplace_back(mono_from_json(j), 1);
        return out;
    }
    auto& terms = as_array(member(j, root, "terms"), root + ".terms");
    for (size_t t = 0; t < terms.size(); ++t) {
        std::string path = root + ".terms[" + std::to_string(t) + "]";
        i64 c = int_member(terms[t], path, "coeff");
        out.terms.emplace_back(
            mono_from_json_at(member(terms[t], path, "term"), path + ".term"),
            static_cast<int>(c));
    }
    return out;
}

// --- scenarios and certificates ---------------------------------------------

json scenario_to_json(const ssq::SpectralScenario& sc) {
    return json{{"p", sc.p},   {"ell", sc.ell},
                {"m", sc.m},   {"i", sc.i},
                {"k", sc.k},   {"n", sc.n},
                {"nprime", sc.nprime()},
                {"power_in_window", sc.power_in_window}};
}

ssq::SpectralScenario scenario_from_json(const json& j) {
    const std::string root = "$.scenario";
    i64 p = int_member(j, root, "p");
    return ssq::make_scenario(static_cast<int>(p), int_member(j, root, "ell"),
                              int_member(j, root, "m"), int_member(j, root, "i"),
                              int_member(j, root, "k"), int_member(j, root, "n"));
}

json certificate_to_json(const realize::Certificate& c) {
    json params = json::object();
    for (auto& [k, v] : c.params) params[k] = v;
    json steps = json::array();
    for (auto& s : c.steps) {
        json values{{"relation", s.relation}, {"lhs", s.lhs}, {"rhs", s.rhs}};
        if (!s.nums.empty()) {
            json nums = json::object();
            for (auto& [k, v] : s.nums) nums[k] = v;
            values["nums"] = std::move(nums);
        }
        if (!s.notes.empty()) {
            json notes = json::object();
            for (auto& [k, v] : s.notes) notes[k] = v;
            values["notes"] = std::move(notes);
        }
        if (!s.uses.empty()) values["uses"] = s.uses;
        steps.push_back(json{{"name", s.name},
                             {"anchor", s.anchor},
                             {"check", s.check},
                             {"values", std::move(values)},
                             {"pass", s.pass},
                             {"margin", s.margin}});
    }
    return json{{"kind", c.kind},
                {"params", std::move(params)},
                {"scenario", scenario_to_json(c.scenario)},
                {"steps", std::move(steps)},
                {"verdict", c.verdict}};
}

realize::Certificate certificate_from_json(const json& j) {
    const std::string root = "$";
    realize::Certificate c;
    c.kind = as_str(member(j, root, "kind"), root + ".kind");
    auto& params = member(j, root, "params");
    if (!params.is_object()) fail(root + ".params", "expected an object");
    for (auto it = params.begin(); it != params.end(); ++it)
        c.params[it.key()] = as_int(it.value(), root + ".params." + it.key());
    c.scenario = scenario_from_json(member(j, root, "scenario"));
    auto& steps = as_array(member(j, root, "steps"), root + ".steps");
    for (size_t t = 0; t < steps.size(); ++t) {
        std::string path = root + ".steps[" + std::to_string(t) + "]";
        realize::CertStep s;
        s.name = as_str(member(steps[t], path, "name"), path + ".name");
        s.anchor = as_str(member(steps[t], path, "anchor"), path + ".anchor");
        s.check = as_str(member(steps[t], path, "check"), path + ".check");
        auto& values = member(steps[t], path, "values");
        std::string vpath = path + ".values";
        s.relation = as_str(member(values, vpath, "relation"), vpath + ".relation");
        s.lhs = int_member(values, vpath, "lhs");
        s.rhs = int_member(values, vpath, "rhs");
        if (values.contains("nums")) {
            auto& nums = values["nums"];
            if (!nums.is_object()) fail(vpath + ".nums", "expected an object");
            for (auto it = nums.begin(); it != nums.end(); ++it)
                s.nums[it.key()] = as_int(it.value(), vpath + ".nums." + it.key());
        }
        if (values.contains("notes")) {
            auto& notes = values["notes"];
            if (!notes.is_object()) fail(vpath + ".notes", "expected an object");
            for (auto it = notes.begin(); it != notes.end(); ++it)
                s.notes[it.key()] = as_str(it.value(), vpath + ".notes." + it.key());
        }
        if (values.contains("uses")) {
            auto& uses = as_array(values["uses"], vpath + ".uses");
            for (size_t u = 0; u < uses.size(); ++u)
                s.uses.push_back(
                    as_str(uses[u], vpath + ".uses[" + std::to_string(u) + "]"));
        }
        s.pass = as_bool(member(steps[t], path, "pass"), path + ".pass");
        s.margin = int_member(steps[t], path, "margin");
        c.steps.push_back(std::move(s));
    }
    c.verdict = as_str(member(j, root, "verdict"), root + ".verdict");
    return c;
}

}  // namespace opal::json_io
