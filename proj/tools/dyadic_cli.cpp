// Command-line front end: batch universality decisions, invariant dumps,
// oracle runs and the decider-vs-oracle sweep harness. All stdout output is
// UTF-8 JSON (one document per run); errors go to stderr as JSON.
//
// Exit codes: 0 decided, 2 invalid input, 3 internal decider disagreement,
// 4 budget or precision exhausted.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dyadic/dyadic.hpp"

namespace {

using dyadic::io::json;

struct Options {
    std::string field_text = "Q2";
    int precision = 0;
    bool pretty = false;
    std::uint64_t budget = dyadic::kDefaultBudget;
};

dyadic::DyadicField open_field(const Options& opt) {
    dyadic::DyadicField f = dyadic::io::field_from_string(opt.field_text);
    if (opt.precision > 0) {
        dyadic::FieldSpec spec = f.spec();
        spec.precision = opt.precision;
        f = dyadic::make_field(spec);
    }
    return f;
}

void emit(const json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

// Positional grammar used by the examples: [FIELD] INPUT... where FIELD is
// "Q2" or an inline JSON field spec.
bool looks_like_field(const std::string& s) {
    return s == "Q2" || s == "q2" || (!s.empty() && s.front() == '{');
}

int cmd_decide(const Options& opt, const std::vector<std::string>& inputs,
               const std::string& route) {
    if (inputs.empty()) throw dyadic::ParseError("decide: missing BONG argument");
    dyadic::DyadicField field = open_field(opt);
    auto entries = dyadic::io::bong_entries_from_string(field, inputs.back());
    dyadic::GoodBongLattice L = dyadic::validate_good_bong(field, entries);
    if (route == "theorem" || route == "lemma") {
        auto v = dyadic::decide_universal(
            L, route == "theorem" ? dyadic::Route::ClosedForm : dyadic::Route::TargetSweep);
        emit(dyadic::io::verdict_to_json(v), opt.pretty);
        return 0;
    }
    auto vt = dyadic::decide_universal_closed_form(L);
    auto vl = dyadic::decide_universal_target_sweep(L);
    if (vt.universal != vl.universal) {
        json j;
        j["error"] = json{{"code", "DeciderDisagreement"},
                          {"message", "closed-form and target-sweep verdicts differ"}};
        j["theorem"] = dyadic::io::verdict_to_json(vt);
        j["lemma"] = dyadic::io::verdict_to_json(vl);
        emit(j, opt.pretty);
        return 3;
    }
    json j = dyadic::io::verdict_to_json(vt);
    j["routes_agree"] = true;
    emit(j, opt.pretty);
    return 0;
}

int cmd_oracle(const Options& opt, const std::vector<std::string>& inputs,
               const std::string& target) {
    dyadic::DyadicField field = open_field(opt);
    dyadic::GramLattice G = dyadic::diagonal_gram(field, {field.one()});
    bool have = false;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i] == "gram") {
            if (i + 1 >= inputs.size()) throw dyadic::ParseError("oracle: gram needs an argument");
            G = dyadic::io::gram_from_string(field, inputs[i + 1]);
            have = true;
            break;
        }
        if (inputs[i].front() == '<' || inputs[i].front() == '[') {
            auto entries = dyadic::io::bong_entries_from_string(field, inputs[i]);
            G = dyadic::bong_to_gram(dyadic::validate_good_bong(field, entries));
            have = true;
            break;
        }
    }
    if (!have) throw dyadic::ParseError("oracle: need a BONG or 'gram <matrix>'");
    if (!target.empty()) {
        dyadic::FieldElement b = dyadic::io::element_from_string(field, target);
        bool rep = dyadic::oracle_represents(G, b, opt.budget);
        json j;
        j["represented"] = rep;
        j["target"] = dyadic::io::element_to_json(b);
        emit(j, opt.pretty);
        return 0;
    }
    auto rep = dyadic::oracle_universal_report(G, opt.budget);
    json j;
    j["universal"] = rep.universal;
    json missing = json::array();
    for (const auto& x : rep.missing) missing.push_back(dyadic::io::element_to_json(x));
    j["missing"] = missing;
    emit(j, opt.pretty);
    return 0;
}

int cmd_invariants(const Options& opt, const std::vector<std::string>& inputs) {
    if (inputs.empty()) throw dyadic::ParseError("invariants: missing BONG argument");
    dyadic::DyadicField field = open_field(opt);
    auto entries = dyadic::io::bong_entries_from_string(field, inputs.back());
    dyadic::GoodBongLattice L = dyadic::validate_good_bong(field, entries);
    json j = dyadic::io::invariants_to_json(L);
    dyadic::GramLattice G = dyadic::bong_to_gram(L);
    dyadic::GramInvariants gi = dyadic::gram_invariants(G);
    j["norm_ord"] = gi.norm_ord;
    j["scale_ord"] = gi.scale_ord;
    j["det_class"] = dyadic::io::element_to_json(gi.det_class);
    emit(j, opt.pretty);
    return 0;
}

int cmd_sweep(const Options& opt, dyadic::SweepConfig cfg) {
    cfg.field = open_field(opt);
    cfg.budget = opt.budget;
    auto t0 = std::chrono::steady_clock::now();
    dyadic::SweepReport report = dyadic::run_sweep(cfg);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    emit(dyadic::io::sweep_report_to_json(report), opt.pretty);
    std::cerr << "sweep: " << report.total << " lattices in " << ms << " ms\n";
    return report.mismatches.empty() ? 0 : 3;
}

int cmd_selftest(const Options& opt) {
    dyadic::DyadicField field = open_field(opt);
    int failed = 0, passed = 0;
    auto check = [&](bool ok, const std::string& name) {
        (ok ? passed : failed) += 1;
        std::cerr << (ok ? "ok   " : "FAIL ") << name << "\n";
    };

    // defect agreement on every unit residue
    const int cap = dyadic::SearchBound::square_cap(field).modulus_digits;
    bool defects_ok = true;
    for (const auto& u : dyadic::enumerate_residues(field, cap, true))
        defects_ok &= dyadic::quadratic_defect(u) == dyadic::oracle_defect(u);
    check(defects_ok, "defect table matches oracle");

    auto [rho, delta] = dyadic::find_delta(field);
    check(dyadic::quadratic_defect(delta) == dyadic::HalfInt::of(2 * field.e()),
          "d(Delta) = 2e");

    // Hilbert symmetry + (a,-a)=+1 over square classes
    auto reps = dyadic::square_class_reps(field, {0, 1});
    bool laws_ok = true;
    for (const auto& a : reps) {
        laws_ok &= dyadic::hilbert(a, -a) == 1;
        for (const auto& b : reps) laws_ok &= dyadic::hilbert(a, b) == dyadic::hilbert(b, a);
    }
    check(laws_ok, "hilbert symmetry and (a,-a)=+1");

    // small exhaustive three-way sweep
    dyadic::SweepConfig cfg;
    cfg.field = field;
    cfg.m_min = 2;
    cfg.m_max = 3;
    cfg.r_min = -2;
    cfg.r_max = 2;
    cfg.budget = opt.budget;
    auto report = dyadic::run_sweep(cfg);
    check(report.total > 0 && report.mismatches.empty(),
          "three-way agreement m in {2,3}, R in [-2,2]");

    json j;
    j["passed"] = passed;
    j["failed"] = failed;
    emit(j, opt.pretty);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universality of integral quadratic lattices over dyadic local fields"};
    app.require_subcommand(1);

    Options opt;
    std::string route = "both", target;
    std::string pos1, pos2, pos3;  // separate strings: CLI11 would split
                                   // bracketed tokens fed to a vector option
    dyadic::SweepConfig cfg;
    std::string mode = "exhaustive";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", opt.field_text, "field spec: Q2 or inline JSON");
        sub->add_option("--precision", opt.precision, "override working precision (pi-digits)");
        sub->add_option("--budget", opt.budget, "enumeration budget");
        sub->add_flag("--json", opt.pretty, "pretty-print JSON output");
        sub->add_option("pos1", pos1, "[field] then the input");
        sub->add_option("pos2", pos2, "");
        sub->add_option("pos3", pos3, "");
    };

    CLI::App* decide = app.add_subcommand("decide", "decide universality of a BONG lattice");
    add_common(decide);
    decide->add_option("--route", route)->check(CLI::IsMember({"both", "theorem", "lemma"}));

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force representation/universality");
    add_common(oracle);
    oracle->add_option("--target", target, "element to represent");

    CLI::App* invariants = app.add_subcommand("invariants", "dump R, alpha, norm, scale, det");
    add_common(invariants);

    CLI::App* sweep = app.add_subcommand("sweep", "three-way agreement sweep over a box");
    add_common(sweep);
    sweep->add_option("--m-min", cfg.m_min);
    sweep->add_option("--m-max", cfg.m_max);
    sweep->add_option("--r-min", cfg.r_min);
    sweep->add_option("--r-max", cfg.r_max);
    sweep->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
    sweep->add_option("--count", cfg.count, "random mode: valid lattices to draw");
    sweep->add_option("--seed", cfg.seed, "random mode seed");

    CLI::App* selftest = app.add_subcommand("selftest", "run built-in consistency checks");
    add_common(selftest);

    CLI11_PARSE(app, argc, argv);

    std::vector<std::string> inputs;
    for (const std::string& s : {pos1, pos2, pos3})
        if (!s.empty()) inputs.push_back(s);
    // allow the field as a leading positional, as in: decide Q2 "<1,1,1,1>"
    if (!inputs.empty() && looks_like_field(inputs.front())) {
        opt.field_text = inputs.front();
        inputs.erase(inputs.begin());
    }
    cfg.mode = mode == "random" ? dyadic::SweepConfig::Mode::Random
                                : dyadic::SweepConfig::Mode::Exhaustive;

    try {
        if (decide->parsed()) return cmd_decide(opt, inputs, route);
        if (oracle->parsed()) return cmd_oracle(opt, inputs, target);
        if (invariants->parsed()) return cmd_invariants(opt, inputs);
        if (sweep->parsed()) return cmd_sweep(opt, cfg);
        if (selftest->parsed()) return cmd_selftest(opt);
    } catch (const dyadic::BudgetExceeded& e) {
        std::cerr << dyadic::io::error_to_json(e).dump() << "\n";
        return 4;
    } catch (const dyadic::PrecisionTooSmall& e) {
        std::cerr << dyadic::io::error_to_json(e).dump() << "\n";
        return 4;
    } catch (const dyadic::PrecisionLoss& e) {
        std::cerr << dyadic::io::error_to_json(e).dump() << "\n";
        return 4;
    } catch (const dyadic::Error& e) {
        std::cerr << dyadic::io::error_to_json(e).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << R"({"error":{"code":"Internal","message":")" << e.what() << "\"}}\n";
        return 2;
    }
    return 0;
}
