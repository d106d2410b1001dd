#include "sik3/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sik3/series.hpp"

namespace sik3 {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json poly_json(const Poly& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : poly_to_strings(p)) arr.push_back(s);
    return arr;
}

ordered_json fibers_json(const std::vector<KodairaFiber>& fibers) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : fibers) {
        ordered_json e;
        e["place"] = f.place.str();
        e["type"] = f.type_str();
        e["euler"] = f.euler;
        e["count"] = f.count;
        arr.push_back(std::move(e));
    }
    return arr;
}

// integers fitting a machine word are emitted as JSON numbers, others as strings
ordered_json int_json(const Int& x) {
    if (x.fits_slong_p()) return ordered_json(x.get_si());
    return ordered_json(int_str(x));
}

ordered_json lattice_json(const Lattice& l) {
    ordered_json g = ordered_json::array();
    for (const auto& row : l.gram()) {
        ordered_json r = ordered_json::array();
        for (const auto& x : row) r.push_back(int_json(x));
        g.push_back(std::move(r));
    }
    ordered_json out;
    out["label"] = l.label();
    out["gram"] = std::move(g);
    return out;
}

Lattice lattice_from_json(const ordered_json& j) {
    IntMat gram;
    for (const auto& row : j.at("gram")) {
        IntVec r;
        for (const auto& x : row) {
            if (x.is_number_integer()) r.emplace_back(x.get<long>());
            else r.emplace_back(Int(x.get<std::string>()));
        }
        gram.push_back(std::move(r));
    }
    return Lattice(std::move(gram), j.value("label", std::string()));
}

ordered_json disc_form_json(const DiscForm& f) {
    ordered_json out;
    ordered_json orders = ordered_json::array();
    for (const auto& d : f.orders) orders.push_back(int_json(d));
    ordered_json q = ordered_json::array();
    for (const auto& v : f.q) q.push_back(rat_str(v));
    ordered_json pairing = ordered_json::array();
    for (const auto& row : f.pairing) {
        ordered_json r = ordered_json::array();
        for (const auto& v : row) r.push_back(rat_str(v));
        pairing.push_back(std::move(r));
    }
    out["orders"] = std::move(orders);
    out["q"] = std::move(q);
    out["pairing"] = std::move(pairing);
    return out;
}

ordered_json report_json(const Report& r) {
    ordered_json out;
    out["command"] = "verify";
    out["version"] = kVersion;
    out["series"] = r.series;
    out["n"] = int_str(r.n);
    ordered_json stages = ordered_json::array();
    for (const auto& s : r.stages) {
        ordered_json e;
        e["name"] = s.name;
        e["pass"] = s.pass;
        ordered_json vals;
        for (const auto& [k, v] : s.values) vals[k] = v;
        e["values"] = std::move(vals);
        stages.push_back(std::move(e));
    }
    out["stages"] = std::move(stages);
    out["pass"] = r.all_pass();
    return out;
}

WeierstrassModel model_from_flags(int family, const std::string& form, const std::string& a_csv,
                                  const std::string& b_csv) {
    if (a_csv.empty()) throw Error("--a is required");
    const Poly a = parse_poly(a_csv);
    const Poly b = b_csv.empty() ? Poly() : parse_poly(b_csv);
    if (family != 0) return build_member(family, a, b).model;
    if (form == "short") return WeierstrassModel::short_form(a, b);
    if (form == "extended") return WeierstrassModel::extended(a, b);
    throw Error("--form must be extended or short");
}

int cmd_lemma(int series, long maxn, std::ostream& out) {
    const BinaryForm q = series_form(series);
    ordered_json counter = ordered_json::array();
    for (long n = 1; n <= maxn; ++n) {
        const bool c = criterion(series, n);
        const bool rep = !primitive_representations(q, n).empty();
        if (c != rep) counter.push_back(n);
    }
    ordered_json j;
    j["command"] = "lemma";
    j["version"] = kVersion;
    j["series"] = series;
    j["max"] = maxn;
    j["agree"] = counter.empty();
    j["counterexamples"] = counter;
    switch (series) {
    case 1:
        j["note"] = "products of primes = 1 mod 4, or twice such; the bare prime "
                    "condition differs from this at even N";
        break;
    case 2:
        j["note"] = "products of primes = 1,2,4 mod 7, or seven times such";
        break;
    default:
        j["note"] = "split primes = 1,4 mod 15 divide N freely; the class is decided "
                    "by the parity of the primes = 2,8 mod 15 together with the "
                    "ramified factors 3 and 5 (each at most once)";
        break;
    }
    out << j.dump(2) << "\n";
    return counter.empty() ? 0 : 1;
}

int cmd_fibers(int family, const std::string& form, const std::string& a_csv,
               const std::string& b_csv, bool use_alt, std::ostream& out) {
    WeierstrassModel model = [&] {
        if (use_alt) {
            if (family != 1) throw Error("--alt requires --family 1");
            return *build_member(1, parse_poly(a_csv), parse_poly(b_csv)).alt;
        }
        return model_from_flags(family, form, a_csv, b_csv);
    }();
    auto fibers = kodaira_classify(model);
    ordered_json j;
    j["command"] = "fibers";
    j["version"] = kVersion;
    j["fibers"] = fibers_json(fibers);
    j["euler_total"] = euler_number(fibers);
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_height(const WeierstrassModel& w, const std::string& px, const std::string& py,
               std::ostream& out) {
    const SectionPoint p = SectionPoint::affine(parse_ratfunc(px), parse_ratfunc(py));
    if (!on_curve(w, p)) throw PointNotOnCurve();
    auto fibers = kodaira_classify(w);
    const Rat h = height(w, p);
    ordered_json comps;
    for (const auto& f : fibers) {
        if (f.root_rank() == 0 || f.count != 1) continue;
        comps[f.place.str() + ":" + f.type_str()] = component_index(w, p, f);
    }
    ordered_json j;
    j["command"] = "height";
    j["version"] = kVersion;
    j["height"] = rat_str(h);
    j["components"] = std::move(comps);
    j["pO"] = int_json(intersection_with_zero(w, p));
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_quotient(const Poly& a, const Poly& b, std::ostream& out) {
    TwoIsogeny iso = quotient_curve(WeierstrassModel::extended(a, b));
    auto fibers = classify_quotient(iso);
    ordered_json j;
    j["command"] = "quotient";
    j["version"] = kVersion;
    j["target_a"] = poly_json(iso.target.ext_a());
    j["target_b"] = poly_json(iso.target.ext_b());
    j["fibers"] = fibers_json(fibers);
    j["euler_total"] = euler_number(fibers);
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_sandwich(const Poly& a, const Poly& b, std::ostream& out) {
    WeierstrassModel w = WeierstrassModel::extended(a, b);
    TwoIsogeny iso = quotient_curve(w);
    const bool match = dual(iso).target.j_invariant() == w.j_invariant();
    ordered_json j;
    j["command"] = "sandwich";
    j["version"] = kVersion;
    j["j_match"] = match;
    out << j.dump(2) << "\n";
    return match ? 0 : 1;
}

int cmd_lattice(const std::string& op, const ordered_json& input, long cap, std::ostream& out) {
    ordered_json j;
    j["command"] = "lattice";
    j["version"] = kVersion;
    j["op"] = op;
    int code = 0;
    if (op == "discriminant_form") {
        const Lattice l = lattice_from_json(input.at("lattice"));
        j["disc"] = int_str(l.disc());
        auto [pos, neg] = l.signature();
        j["signature"] = ordered_json::array({pos, neg});
        j["form"] = disc_form_json(discriminant_form(l));
    } else if (op == "overlattice") {
        const Lattice l = lattice_from_json(input.at("lattice"));
        std::vector<GlueVector> glues;
        for (const auto& row : input.at("glues")) {
            GlueVector g;
            for (const auto& x : row) g.push_back(parse_rat(x.get<std::string>()));
            glues.push_back(std::move(g));
        }
        const Lattice lp = overlattice(l, glues);
        j["lattice"] = lattice_json(lp);
        j["disc"] = int_str(lp.disc());
    } else if (op == "disc_forms_isomorphic") {
        const Lattice l1 = lattice_from_json(input.at("l1"));
        const Lattice l2 = lattice_from_json(input.at("l2"));
        const bool negate = input.value("negate", false);
        const bool iso =
            disc_forms_isomorphic(discriminant_form(l1), discriminant_form(l2), negate, cap);
        j["isomorphic"] = iso;
        code = iso ? 0 : 1;
    } else {
        throw Error("unknown lattice op: " + op);
    }
    out << j.dump(2) << "\n";
    return code;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verification of sandwiched Shioda-Inose structures on elliptic K3 surfaces"};
    app.require_subcommand(1);

    int series = 1;
    long maxn = 5000;
    auto* lemma = app.add_subcommand("lemma", "criterion vs. exhaustive representation sweep");
    lemma->add_option("--series", series, "series 1, 2 or 3")->required();
    lemma->add_option("--max", maxn, "sweep bound");

    std::string a_csv, b_csv, form = "extended", px, py;
    int family = 0;
    bool use_alt = false;
    auto* fibers = app.add_subcommand("fibers", "Kodaira fibre table");
    fibers->add_option("--a", a_csv, "coefficient polynomial a, ascending csv");
    fibers->add_option("--b", b_csv, "coefficient polynomial b, ascending csv");
    fibers->add_option("--form", form, "extended | short");
    fibers->add_option("--family", family, "build from family 1, 2 or 3");
    fibers->add_flag("--alt", use_alt, "alternate fibration (family 1)");

    auto* height_cmd = app.add_subcommand("height", "Mordell-Weil height of a section");
    height_cmd->add_option("--a", a_csv)->required();
    height_cmd->add_option("--b", b_csv);
    height_cmd->add_option("--form", form, "extended | short");
    height_cmd->add_option("--family", family, "build from family 1, 2 or 3");
    height_cmd->add_option("--px", px, "x(P), csv or csv:csv")->required();
    height_cmd->add_option("--py", py, "y(P)")->required();

    auto* quotient = app.add_subcommand("quotient", "2-isogeny quotient of an extended model");
    quotient->add_option("--a", a_csv)->required();
    quotient->add_option("--b", b_csv)->required();

    auto* sandwich = app.add_subcommand("sandwich", "double-quotient j-invariant comparison");
    sandwich->add_option("--a", a_csv)->required();
    sandwich->add_option("--b", b_csv)->required();

    std::string n_str, alpha_str, w_csv;
    auto* verify = app.add_subcommand("verify", "run the full verification pipeline");
    verify->add_option("--series", series, "series 1, 2 or 3")->required();
    verify->add_option("--n", n_str, "the integer N")->required();
    verify->add_option("--alpha", alpha_str, "witness x-coordinate parameter (series 2/3)");
    verify->add_option("--w", w_csv, "witness polynomial w, ascending csv");

    std::string op, input_path, input_json;
    long cap = 10000;
    auto* lattice = app.add_subcommand("lattice", "discriminant-form calculus on JSON input");
    lattice->add_option("--op", op, "discriminant_form | overlattice | disc_forms_isomorphic")
        ->required();
    lattice->add_option("--input", input_path, "JSON file ('-' for stdin)");
    lattice->add_option("--json", input_json, "inline JSON input");
    lattice->add_option("--cap", cap, "isomorphism search cap");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        ordered_json j;
        j["error"] = e.what();
        out << j.dump(2) << "\n";
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (lemma->parsed()) return cmd_lemma(series, maxn, out);
        if (fibers->parsed()) return cmd_fibers(family, form, a_csv, b_csv, use_alt, out);
        if (height_cmd->parsed())
            return cmd_height(model_from_flags(family, form, a_csv, b_csv), px, py, out);
        if (quotient->parsed()) return cmd_quotient(parse_poly(a_csv), parse_poly(b_csv), out);
        if (sandwich->parsed()) return cmd_sandwich(parse_poly(a_csv), parse_poly(b_csv), out);
        if (verify->parsed()) {
            const Int n(n_str);
            std::optional<std::pair<Rat, Poly>> witness;
            if (!alpha_str.empty() || !w_csv.empty()) {
                if (alpha_str.empty() || w_csv.empty())
                    throw Error("--alpha and --w must be given together");
                witness = std::pair{parse_rat(alpha_str), parse_poly(w_csv)};
            }
            const Report r = verify_sandwich(series, n, witness);
            out << report_json(r).dump(2) << "\n";
            return r.all_pass() ? 0 : 1;
        }
        if (lattice->parsed()) {
            ordered_json input;
            if (!input_json.empty()) {
                input = ordered_json::parse(input_json);
            } else if (input_path == "-") {
                input = ordered_json::parse(std::cin);
            } else if (!input_path.empty()) {
                std::ifstream in(input_path);
                if (!in) throw Error("cannot open " + input_path);
                input = ordered_json::parse(in);
            } else {
                throw Error("lattice needs --input or --json");
            }
            return cmd_lattice(op, input, cap, out);
        }
    } catch (const Error& e) {
        ordered_json j;
        j["error"] = e.what();
        out << j.dump(2) << "\n";
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ordered_json::exception& e) {
        ordered_json j;
        j["error"] = e.what();
        out << j.dump(2) << "\n";
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace sik3
