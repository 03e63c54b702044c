// Command-line frontend: batch subcommands over the operation calculus and
// the certificate engine, with deterministic text or JSON output.
//
//   coeff     coefficient functions nu/gamma/lambda and binomials mod p
//   adem      rewrite a word of operations into admissible form
//   basis     admissible monomials in one degree
//   module    validate a graded module, apply operations, re-emit JSON
//   phi       emit the cyclic-subgroup quotient module as JSON
//   nishida   expand a power on a dual operation class
//   pair      Kronecker pairing of two operation expressions
//   ssq-page  column blocks, degree intervals and gaps for a scenario
//   certify   build, print and recheck nonrealization certificates
//
// Exit codes: 0 success with every check passing; 1 a completed run whose
// checks failed (red certificate step, invalid module); 2 usage or input
// errors (bad flags, malformed JSON).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opal/json_io.hpp"
#include "opal/nishida.hpp"
#include "opal/opcalc.hpp"
#include "opal/pairing.hpp"
#include "opal/phi.hpp"
#include "opal/realize.hpp"
#include "opal/ssq.hpp"
#include "opal/steenrod.hpp"
#include "opal/unstable.hpp"

namespace {

using opal::i64;
using opal::json_io::json;

struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& out() { return *os; }
};

void emit_json(Sink& sink, const json& j) { sink.out() << j.dump(2) << "\n"; }

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

// --- rendering in the plain ASCII notation ---------------------------------

std::string render_word(const opal::steenrod::Monomial& m) {
    std::string word;
    for (auto& L : m.letters()) {
        if (!word.empty()) word += " ";
        word += L.bock ? "b" : "P^" + std::to_string(L.s);
    }
    return word;
}

std::string render_element(const opal::steenrod::Element& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    for (auto& [m, c] : e.terms) {
        if (!out.empty()) out += " + ";
        std::string word = render_word(m);
        if (word.empty()) out += std::to_string(c);
        else if (c == 1) out += word;
        else out += std::to_string(c) + " " + word;
    }
    return out;
}

std::string render_vec(const opal::unstable::GradedFpModule& m, const opal::SparseVec& v) {
    if (v.empty()) return "0";
    std::string out;
    for (auto& [idx, c] : v) {
        if (!out.empty()) out += " + ";
        if (c != 1) out += std::to_string(c) + " ";
        out += m.basis[idx].name;
    }
    return out;
}

opal::steenrod::Word parse_word(const std::string& text, const std::string& flag) {
    opal::steenrod::Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "b" || tok == "B" || tok == "beta") {
            w.push_back(opal::steenrod::Letter::B());
            continue;
        }
        if (tok.size() >= 2 && (tok[0] == 'P' || tok[0] == 'p')) {
            std::string digits = tok.substr(tok[1] == '^' ? 2 : 1);
            try {
                size_t used = 0;
                i64 s = std::stoll(digits, &used);
                if (used == digits.size() && s >= 0) {
                    w.push_back(opal::steenrod::Letter::P(s));
                    continue;
                }
            } catch (const std::exception&) {
            }
        }
        throw std::invalid_argument(flag + ": cannot read token \"" + tok +
                                    "\" (expected e.g. \"P3\", \"P^3\", \"b\")");
    }
    return w;
}

// --- certificate printing ---------------------------------------------------

void print_step(std::ostream& os, const opal::realize::CertStep& s,
                const char* indent) {
    os << indent << (s.pass ? "PASS " : "FAIL ") << s.name << ": " << s.lhs
       << " " << s.relation << " " << s.rhs << " (margin " << s.margin << ") "
       << s.check << "\n";
}

void print_certificate(std::ostream& os, const opal::realize::Certificate& c,
                       const char* indent) {
    os << indent << "certificate " << c.kind << "\n";
    for (auto& s : c.steps) print_step(os, s, indent);
    os << indent << "verdict: " << c.verdict << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd-primary operation calculus and nonrealization certificates"};
    app.require_subcommand(1);

    std::string format = "text", out_path;

    // --- coeff --------------------------------------------------------------
    auto* coeff = app.add_subcommand("coeff", "coefficient functions mod p");
    i64 co_p = 3;
    std::vector<i64> co_nu, co_gamma, co_lambda, co_binom, co_binom_s;
    coeff->add_option("--p", co_p, "odd prime")->required();
    coeff->add_option("--nu", co_nu, "nu(q)")->expected(1);
    coeff->add_option("--gamma", co_gamma, "gamma(q, r)")->expected(2);
    coeff->add_option("--lambda", co_lambda, "lambda(q, n)")->expected(2);
    coeff->add_option("--binom", co_binom, "C(n, k) mod p")->expected(2);
    coeff->add_option("--binom-signed", co_binom_s, "C(n, k) mod p, n may be negative")
        ->expected(2);
    coeff->add_option("--format", format, "text|json");
    coeff->add_option("--out", out_path, "output file");

    // --- adem ---------------------------------------------------------------
    auto* adem = app.add_subcommand("adem", "rewrite a word into admissible form");
    i64 ad_p = 3;
    std::string ad_word;
    adem->add_option("--p", ad_p, "odd prime")->required();
    adem->add_option("--word", ad_word, "space-separated letters, e.g. \"P1 P1\"")
        ->required();
    adem->add_option("--format", format, "text|json");
    adem->add_option("--out", out_path, "output file");

    // --- basis --------------------------------------------------------------
    auto* basis = app.add_subcommand("basis", "admissible monomials in one degree");
    i64 ba_p = 3, ba_deg = 0, ba_cap = 200;
    basis->add_option("--p", ba_p, "odd prime")->required();
    basis->add_option("--deg", ba_deg, "degree")->required();
    basis->add_option("--max-deg", ba_cap, "degree guard bound")
        ->envname("OPAL_DEGREE_CAP");
    basis->add_option("--format", format, "text|json");
    basis->add_option("--out", out_path, "output file");

    // --- module -------------------------------------------------------------
    auto* module = app.add_subcommand("module", "validate and act on a graded module");
    std::string mo_in, mo_on;
    i64 mo_apply = -1, mo_eps = 0;
    bool mo_emit = false;
    module->add_option("--in", mo_in, "module JSON file")->required();
    module->add_flag("--emit", mo_emit, "re-emit the module as canonical JSON");
    module->add_option("--apply", mo_apply, "apply beta^eps P^i for this i");
    module->add_option("--eps", mo_eps, "Bockstein bit for --apply")
        ->check(CLI::Range(i64{0}, i64{1}));
    module->add_option("--on", mo_on, "basis class name for --apply");
    module->add_option("--format", format, "text|json");
    module->add_option("--out", out_path, "output file");

    // --- phi ----------------------------------------------------------------
    auto* phi = app.add_subcommand("phi", "emit the cyclic quotient module");
    i64 ph_p = 3, ph_k = 0, ph_l = -1, ph_cap = -1;
    std::string ph_format = "json";
    phi->add_option("--p", ph_p, "odd prime")->required();
    phi->add_option("--k", ph_k, "lowest scale exponent")->required();
    phi->add_option("--l", ph_l, "highest scale exponent (complete range)");
    phi->add_option("--cap", ph_cap, "degree cap (incomplete truncation)");
    phi->add_option("--format", ph_format, "text|json (default json)");
    phi->add_option("--out", out_path, "output file");

    // --- nishida ------------------------------------------------------------
    auto* nish = app.add_subcommand("nishida", "expand a power on an operation class");
    i64 ni_p = 3, ni_n = -1, ni_s = 0, ni_r = 0, ni_deg = 0;
    std::string ni_side = "coh", ni_name = "x", ni_in;
    nish->add_option("--p", ni_p, "odd prime")->required();
    nish->add_option("--n", ni_n, "ambient dimension, -1 for infinity");
    nish->add_option("--side", ni_side, "coh|hom")
        ->check(CLI::IsMember({"coh", "hom"}));
    nish->add_option("--s", ni_s, "power exponent")->required();
    nish->add_option("--r", ni_r, "operation index")->required();
    nish->add_option("--deg", ni_deg, "degree of the class");
    nish->add_option("--name", ni_name, "name of the class");
    nish->add_option("--x", ni_in, "expression JSON file holding a single leaf");
    nish->add_option("--format", format, "text|json");
    nish->add_option("--out", out_path, "output file");

    // --- pair ---------------------------------------------------------------
    auto* pair = app.add_subcommand("pair", "Kronecker pairing of two expressions");
    i64 pa_p = 3, pa_n = -1;
    std::string pa_x, pa_y;
    pair->add_option("--p", pa_p, "odd prime")->required();
    pair->add_option("--n", pa_n, "ambient dimension, -1 for infinity");
    pair->add_option("--x", pa_x, "cohomology expression JSON file")->required();
    pair->add_option("--y", pa_y, "homology expression JSON file")->required();
    pair->add_option("--format", format, "text|json");
    pair->add_option("--out", out_path, "output file");

    // --- ssq-page -----------------------------------------------------------
    auto* page = app.add_subcommand("ssq-page", "column blocks, intervals and gaps");
    i64 sq_p = 3, sq_l = 0, sq_m = 0, sq_i = 0, sq_k = 0, sq_n = 0, sq_maxcol = -1;
    page->add_option("--p", sq_p, "odd prime")->required();
    page->add_option("--l", sq_l, "window bottom")->required();
    page->add_option("--m", sq_m, "window top")->required();
    page->add_option("--i", sq_i, "class half-degree")->required();
    page->add_option("--k", sq_k, "scale exponent")->required();
    page->add_option("--n", sq_n, "suspension count");
    page->add_option("--max-col", sq_maxcol, "largest column (default p^2)");
    page->add_option("--format", format, "text|json");
    page->add_option("--out", out_path, "output file");

    // --- certify ------------------------------------------------------------
    auto* cert = app.add_subcommand("certify", "build or recheck a certificate");
    i64 ce_p = 3, ce_l = 0, ce_m = 0, ce_i = 0, ce_k = 0, ce_n = 0, ce_cd = -1;
    std::string ce_kind = "nneq", ce_module, ce_recheck;
    cert->add_option("--p", ce_p, "odd prime");
    cert->add_option("--l", ce_l, "window bottom");
    cert->add_option("--m", ce_m, "window top");
    cert->add_option("--i", ce_i, "class half-degree");
    cert->add_option("--k", ce_k, "scale exponent");
    cert->add_option("--n", ce_n, "suspension count");
    cert->add_option("--class-deg", ce_cd, "suspended class degree (kind=main)");
    cert->add_option("--kind", ce_kind, "nneq|walk|algebra|main")
        ->check(CLI::IsMember({"nneq", "walk", "algebra", "main"}));
    cert->add_option("--module", ce_module, "module JSON fixture (walk/algebra)");
    cert->add_option("--recheck", ce_recheck, "recheck a certificate JSON file");
    cert->add_option("--format", format, "text|json");
    cert->add_option("--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Sink sink;
        sink.open(out_path);
        const bool as_json = format == "json";
        if (format != "text" && format != "json")
            throw std::invalid_argument("--format must be text or json");

        if (*coeff) {
            opal::CoeffTables tables(static_cast<int>(co_p));
            std::string op;
            std::vector<i64> args;
            int value = 0, given = 0;
            if (!co_nu.empty()) { ++given; op = "nu"; args = co_nu; value = tables.nu(co_nu[0]); }
            if (!co_gamma.empty()) { ++given; op = "gamma"; args = co_gamma; value = tables.gamma(co_gamma[0], co_gamma[1]); }
            if (!co_lambda.empty()) { ++given; op = "lambda"; args = co_lambda; value = tables.lambda_(co_lambda[0], co_lambda[1]); }
            if (!co_binom.empty()) { ++given; op = "binom"; args = co_binom; value = opal::binom_mod(co_binom[0], co_binom[1], static_cast<int>(co_p)); }
            if (!co_binom_s.empty()) { ++given; op = "binom-signed"; args = co_binom_s; value = opal::binom_signed(co_binom_s[0], co_binom_s[1], static_cast<int>(co_p)); }
            if (given != 1)
                throw std::invalid_argument(
                    "coeff: give exactly one of --nu, --gamma, --lambda, "
                    "--binom, --binom-signed");
            if (as_json)
                emit_json(sink, json{{"p", co_p}, {"op", op}, {"args", args}, {"value", value}});
            else
                sink.out() << value << "\n";
            return 0;
        }

        if (*adem) {
            auto word = parse_word(ad_word, "--word");
            auto e = opal::steenrod::adem_reduce(word, static_cast<int>(ad_p));
            if (as_json) emit_json(sink, opal::json_io::element_to_json(e));
            else sink.out() << render_element(e) << "\n";
            return 0;
        }

        if (*basis) {
            auto mons =
                opal::steenrod::basis_in_degree(ba_deg, static_cast<int>(ba_p), ba_cap);
            if (as_json) {
                json arr = json::array();
                for (auto& m : mons) arr.push_back(json{{"word", m.packed()}});
                emit_json(sink, json{{"p", ba_p},
                                     {"deg", ba_deg},
                                     {"count", mons.size()},
                                     {"basis", std::move(arr)}});
            } else {
                for (auto& m : mons) {
                    std::string word = render_word(m);
                    sink.out() << (word.empty() ? "1" : word) << "\n";
                }
            }
            return 0;
        }

        if (*module) {
            auto m = opal::json_io::module_from_json(load_json(mo_in));
            auto problems = opal::unstable::validate_module(m);
            auto unst = problems.empty() ? opal::unstable::check_unstable(m)
                                         : opal::unstable::UnstableReport{};
            if (!problems.empty() || !unst.ok) {
                if (as_json) {
                    json viols = json::array();
                    for (auto& v : unst.violations)
                        viols.push_back(json{{"class", m.basis[v.class_index].name},
                                             {"i", v.i},
                                             {"eps", v.eps}});
                    emit_json(sink, json{{"valid", problems.empty()},
                                         {"problems", problems},
                                         {"unstable", unst.ok},
                                         {"violations", std::move(viols)}});
                } else {
                    for (auto& pr : problems) sink.out() << "invalid: " << pr << "\n";
                    for (auto& v : unst.violations)
                        sink.out() << "instability: "
                                   << (v.eps ? "b " : "") << "P^" << v.i << " on "
                                   << m.basis[v.class_index].name
                                   << " must vanish\n";
                }
                return 1;
            }
            if (mo_apply >= 0) {
                if (mo_on.empty())
                    throw std::invalid_argument("module --apply needs --on CLASS");
                i64 idx = -1;
                for (i64 t = 0; t < m.dim(); ++t)
                    if (m.basis[t].name == mo_on) idx = t;
                if (idx < 0)
                    throw std::invalid_argument("module: no basis class named \"" +
                                                mo_on + "\"");
                auto r = opal::unstable::apply_op(m, static_cast<int>(mo_eps),
                                                  mo_apply,
                                                  opal::unstable::basis_vec(idx));
                if (as_json) {
                    json value = json::array();
                    for (auto& [row, c] : r.value) value.push_back(json::array({row, c}));
                    emit_json(sink,
                              json{{"status", r.ok() ? "ok" : "out-of-range"},
                                   {"value", std::move(value)},
                                   {"render", r.ok() ? render_vec(m, r.value) : ""}});
                } else {
                    sink.out() << (r.ok() ? render_vec(m, r.value) : "out-of-range")
                               << "\n";
                }
                return 0;
            }
            if (mo_emit) {
                emit_json(sink, opal::json_io::module_to_json(m));
                return 0;
            }
            if (as_json)
                emit_json(sink, json{{"valid", true}, {"problems", json::array()}});
            else
                sink.out() << "valid\n";
            return 0;
        }

        if (*phi) {
            if ((ph_l >= 0) == (ph_cap >= 0))
                throw std::invalid_argument("phi: give exactly one of --l, --cap");
            auto m = ph_l >= 0
                         ? opal::phi::make_phi_range(static_cast<int>(ph_p), ph_k, ph_l)
                         : opal::phi::make_phi(static_cast<int>(ph_p), ph_k, ph_cap);
            if (ph_format == "json") {
                emit_json(sink, opal::json_io::module_to_json(m));
            } else if (ph_format == "text") {
                for (auto& b : m.basis) sink.out() << b.name << " " << b.deg << "\n";
            } else {
                throw std::invalid_argument("--format must be text or json");
            }
            return 0;
        }

        if (*nish) {
            opal::opcalc::Ambient amb{static_cast<int>(ni_p), ni_n};
            opal::CoeffTables tables(static_cast<int>(ni_p));
            opal::opcalc::FormalClass x{ni_name, ni_deg, 1, 0};
            if (!ni_in.empty()) {
                auto l = opal::json_io::expr_from_json(load_json(ni_in));
                if (l.terms.size() != 1 ||
                    l.terms[0].first->kind != opal::opcalc::NodeKind::Leaf ||
                    l.terms[0].first->decorated)
                    throw std::invalid_argument(
                        "nishida --x: expected a single undecorated leaf");
                x = l.terms[0].first->base;
            }
            auto e = ni_side == "coh"
                         ? opal::nishida::nishida_expand_coh(amb, tables, ni_s, ni_r, x)
                         : opal::nishida::nishida_expand_hom(amb, tables, ni_s, ni_r, x);
            e = opal::opcalc::simplify(amb, e);
            if (as_json) emit_json(sink, opal::json_io::expr_to_json(e));
            else sink.out() << opal::opcalc::render(e) << "\n";
            return 0;
        }

        if (*pair) {
            opal::opcalc::Ambient amb{static_cast<int>(pa_p), pa_n};
            opal::CoeffTables tables(static_cast<int>(pa_p));
            auto x = opal::json_io::expr_from_json(load_json(pa_x));
            auto y = opal::json_io::expr_from_json(load_json(pa_y));
            auto r = opal::pairing::pair(amb, tables, x, y);
            if (r.mismatch)
                std::cerr << "warning: degree/weight mismatch between the arguments\n";
            if (as_json) {
                json terms = json::array();
                for (auto& [mono, c] : r.poly.terms) {
                    json symbols = json::array();
                    for (auto& s : mono)
                        symbols.push_back(json{{"x", s.xname},
                                               {"y", s.yname},
                                               {"power", s.q},
                                               {"bockstein", s.eps}});
                    terms.push_back(json{{"coeff", c}, {"symbols", std::move(symbols)}});
                }
                emit_json(sink, json{{"terms", std::move(terms)},
                                     {"mismatch", r.mismatch},
                                     {"render", opal::pairing::render(r.poly)}});
            } else {
                sink.out() << opal::pairing::render(r.poly) << "\n";
            }
            return 0;
        }

        if (*page) {
            auto sc = opal::ssq::make_scenario(static_cast<int>(sq_p), sq_l, sq_m,
                                               sq_i, sq_k, sq_n);
            if (sq_maxcol < 0) sq_maxcol = (i64)sq_p * sq_p;
            json rows = json::array();
            for (i64 col = 0; col <= sq_maxcol; ++col) {
                std::vector<std::pair<i64, i64>> ivs;
                for (auto& [u, v, w] : opal::ssq::column_blocks(col)) {
                    auto iv = opal::ssq::e1_column_interval(u, v, w, sc);
                    ivs.emplace_back(iv.lo, iv.hi);
                    rows.push_back(json{{"type", "block"},
                                        {"column", col},
                                        {"u", u},
                                        {"v", v},
                                        {"w", w},
                                        {"lo", iv.lo},
                                        {"hi", iv.hi}});
                    if (!as_json)
                        sink.out() << "block col=" << col << " (" << u << "," << v
                                   << "," << w << ") [" << iv.lo << ", " << iv.hi
                                   << "]\n";
                }
                // uncovered stretches inside the column's own degree hull
                std::sort(ivs.begin(), ivs.end());
                i64 cover = -1;
                for (auto& [lo, hi] : ivs) {
                    if (cover >= 0 && lo > cover + 1) {
                        rows.push_back(json{{"type", "gap"},
                                            {"column", col},
                                            {"lo", cover + 1},
                                            {"hi", lo - 1}});
                        if (!as_json)
                            sink.out() << "gap   col=" << col << " [" << cover + 1
                                       << ", " << lo - 1 << "]\n";
                    }
                    cover = std::max(cover, hi);
                }
            }
            if (as_json)
                emit_json(sink, json{{"scenario", opal::json_io::scenario_to_json(sc)},
                                     {"rows", std::move(rows)}});
            return 0;
        }

        if (*cert) {
            using namespace opal::realize;
            if (!ce_recheck.empty()) {
                auto c = opal::json_io::certificate_from_json(load_json(ce_recheck));
                auto rep = verify_certificate(c);
                if (as_json) {
                    emit_json(sink, json{{"relations_ok", rep.relations_ok},
                                         {"regenerated", rep.regenerated},
                                         {"regeneration_ok", rep.regeneration_ok},
                                         {"ok", rep.ok()},
                                         {"problems", rep.problems}});
                } else {
                    for (auto& pr : rep.problems) sink.out() << "note: " << pr << "\n";
                    sink.out() << (rep.ok() ? "recheck ok" : "recheck FAILED") << "\n";
                }
                return rep.ok() ? 0 : 1;
            }

            opal::unstable::GradedFpModule fixture;
            const opal::unstable::GradedFpModule* fixture_ptr = nullptr;
            if (!ce_module.empty()) {
                fixture = opal::json_io::module_from_json(load_json(ce_module));
                fixture_ptr = &fixture;
            }

            Certificate outer;
            std::optional<Certificate> inner;
            if (ce_kind == "nneq") {
                if (fixture_ptr)
                    throw std::invalid_argument(
                        "certify --kind nneq uses the built-in fixture");
                outer = thm_nneq_certificate(static_cast<int>(ce_p), ce_k, ce_l,
                                             ce_m, ce_i, ce_n);
            } else if (ce_kind == "walk") {
                outer = prop_neqn_check(static_cast<int>(ce_p), ce_k, ce_l, ce_m,
                                        ce_i, fixture_ptr);
            } else if (ce_kind == "algebra") {
                outer = prop_unstable_algebra_check(static_cast<int>(ce_p), ce_k,
                                                    ce_l, ce_m, ce_i, fixture_ptr);
            } else {
                if (ce_cd < 0)
                    throw std::invalid_argument("certify --kind main needs --class-deg");
                auto r = thm_main_from_nneq(
                    static_cast<int>(ce_p), ce_k,
                    SuspensionDescriptor{ce_l, ce_m, ce_n, ce_cd});
                outer = std::move(r.cert);
                inner = std::move(r.inner);
            }

            bool green = outer.all_pass() && (!inner || inner->all_pass());
            if (as_json) {
                json j = opal::json_io::certificate_to_json(outer);
                if (inner) j["inner"] = opal::json_io::certificate_to_json(*inner);
                emit_json(sink, j);
            } else {
                print_certificate(sink.out(), outer, "");
                if (inner) print_certificate(sink.out(), *inner, "  ");
            }
            return green ? 0 : 1;
        }

        throw std::invalid_argument("no subcommand selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
