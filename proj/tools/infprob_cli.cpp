#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "infprob/cumulants.hpp"
#include "infprob/distributions.hpp"
#include "infprob/idempotent.hpp"
#include "infprob/poly_laws.hpp"
#include "infprob/rdiagonal.hpp"
#include "infprob/rmt.hpp"
#include "infprob/series.hpp"

using json = nlohmann::json;
using namespace infprob;

namespace {

constexpr const char* kVersion = "infprob 1.0.0";

json read_input(const std::string& path) {
    try {
        if (path.empty() || path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open input file: " + path);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
}

Scalar parse_scalar(const json& v, const std::string& field) {
    try {
        if (v.is_number_integer()) return Scalar(static_cast<long long>(v.get<long long>()));
        if (v.is_string()) return Scalar::parse(v.get<std::string>());
    } catch (const std::exception&) {
    }
    throw ParseError("field '" + field + "' must be an integer or a \"p/q\" string");
}

Sequence parse_seq(const json& doc, const std::string& field, bool required) {
    if (!doc.contains(field)) {
        if (required) throw ParseError("missing field '" + field + "'");
        return {};
    }
    if (!doc[field].is_array()) throw ParseError("field '" + field + "' must be an array");
    Sequence out;
    for (const auto& v : doc[field]) out.push_back(parse_scalar(v, field));
    return out;
}

Scalar parse_field(const json& doc, const std::string& field, const Scalar& fallback,
                   bool required = false) {
    if (!doc.contains(field)) {
        if (required) throw ParseError("missing field '" + field + "'");
        return fallback;
    }
    return parse_scalar(doc[field], field);
}

json seq_json(const Sequence& s) {
    json arr = json::array();
    for (const auto& v : s) arr.push_back(v.str());
    return arr;
}

json series_json(const TruncatedSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.z_coeffs_ascending()) coeffs.push_back(c.str());
    return json{{"lowest_exp", s.lowest_z_exp()}, {"coeffs", coeffs}};
}

json quad_json(const Quad& q) {
    return json{{"p", rat_str(q.p())}, {"q", rat_str(q.q())}, {"s", q.s().str()}};
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

int env_cap(int fallback) {
    const char* v = std::getenv("INFPROB_CAP");
    if (!v) return fallback;
    try {
        int cap = std::stoi(v);
        if (cap < 1) throw std::invalid_argument("nonpositive");
        return cap;
    } catch (const std::exception&) {
        throw ParseError("INFPROB_CAP must be a positive integer");
    }
}

std::vector<Rat> parse_rat_list(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(rat_parse(item));
        } catch (const std::exception&) {
            throw ParseError("bad rational in eigenvalue list: " + item);
        }
    }
    return out;
}

std::string emit(json config, json payload) {
    payload["config"] = std::move(config);
    return payload.dump(2) + "\n";
}

// ---- subcommand bodies ----------------------------------------------------

int run_partitions(int n, const std::string& cls_name, const std::string& out_path) {
    PartitionClass cls;
    if (cls_name == "nc")
        cls = PartitionClass::NONCROSSING;
    else if (cls_name == "interval")
        cls = PartitionClass::INTERVAL;
    else if (cls_name == "cyclic")
        cls = PartitionClass::CYCLIC_INTERVAL;
    else if (cls_name == "all")
        cls = PartitionClass::ALL;
    else
        throw ParseError("unknown partition class: " + cls_name);
    PartitionCaps caps;
    int cap = env_cap(0);
    if (cap > 0) caps = PartitionCaps{cap, cap, cap, cap};
    json parts = json::array();
    std::uint64_t count = for_each_partition(n, cls, [&](const Partition& p) {
        json blocks = json::array();
        for (const auto& b : p.blocks()) blocks.push_back(b);
        parts.push_back(std::move(blocks));
    }, caps);
    json config{{"subcommand", "partitions"}, {"n", n}, {"class", cls_name}};
    write_output(out_path, emit(config, {{"count", count}, {"partitions", parts}}));
    return 0;
}

int run_transform(const std::string& in_path, const std::string& out_path,
                  const std::string& direction, const std::string& format) {
    json doc = read_input(in_path);
    Sequence m = parse_seq(doc, "moments", true);
    Sequence mp = parse_seq(doc, "inf_moments", false);
    std::string target = doc.value("target", "free");
    int order = doc.value("order", static_cast<int>(m.size()));
    if (order < 1 || order > env_cap(24)) throw SizeLimitError("order outside 1..cap");
    bool forward = direction == "to-cumulants";
    if (!forward && direction != "to-moments")
        throw ParseError("direction must be to-cumulants or to-moments");

    json payload;
    Sequence result, inf_result;
    if (target == "free") {
        result = forward ? free_cumulants_from_moments(m, order)
                         : moments_from_free_cumulants(m, order);
    } else if (target == "boolean") {
        result = forward ? boolean_cumulants_from_moments(m, order)
                         : moments_from_boolean_cumulants(m, order);
    } else if (target == "infinitesimal") {
        if (mp.empty()) throw ParseError("target infinitesimal needs 'inf_moments'");
        InfSequencePair pair = forward ? inf_cumulants_from_moments(m, mp, order)
                                       : inf_moments_from_cumulants(m, mp, order);
        result = pair.plain;
        inf_result = pair.primed;
    } else {
        throw ParseError("target must be free, boolean, or infinitesimal");
    }
    json config{{"subcommand", "transform"}, {"target", target},
                {"direction", direction}, {"order", order}};
    if (format == "csv") {
        std::ostringstream os;
        os << (inf_result.empty() ? "n,value\n" : "n,value,inf_value\n");
        for (int k = 0; k < order; ++k) {
            os << (k + 1) << ',' << result[k].str();
            if (!inf_result.empty()) os << ',' << inf_result[k].str();
            os << '\n';
        }
        write_output(out_path, os.str());
        return 0;
    }
    payload["result"] = seq_json(result);
    if (!inf_result.empty()) payload["inf_result"] = seq_json(inf_result);
    write_output(out_path, emit(config, payload));
    return 0;
}

int run_series(const std::string& in_path, const std::string& out_path,
               const std::string& op, int order) {
    json doc = read_input(in_path);
    bool inf = op == "inf-g";
    Sequence m = parse_seq(doc, inf ? "inf_moments" : "moments", true);
    if (order == 0) order = static_cast<int>(m.size());
    if (order < 1 || order > env_cap(24)) throw SizeLimitError("order outside 1..cap");
    TruncatedSeries s(SeriesKind::Z, 0);
    if (op == "cauchy")
        s = cauchy_from_moments(m, order);
    else if (op == "r")
        s = r_from_moments(m, order);
    else if (op == "psi")
        s = psi_from_moments(m, order);
    else if (op == "eta")
        s = eta_from_psi(psi_from_moments(m, order), order);
    else if (op == "inf-g")
        s = inf_g_from_inf_moments(m, order);
    else
        throw ParseError("unknown series op: " + op);
    json config{{"subcommand", "series"}, {"op", op}, {"order", order}};
    write_output(out_path, emit(config, {{"series", series_json(s)}}));
    return 0;
}

int run_inf_law(const std::string& in_path, const std::string& out_path,
                const std::string& poly, int order) {
    json doc = read_input(in_path);
    FreePolyInput in;
    in.m1 = parse_field(doc, "m1", Scalar(0), true);
    in.m2 = parse_field(doc, "m2", Scalar(0), true);
    in.x2_inf_moments = parse_seq(doc, "x2_inf", true);
    if (order == 0) order = static_cast<int>(in.x2_inf_moments.size());
    if (order < 1 || order > env_cap(24)) throw SizeLimitError("order outside 1..cap");
    Sequence mp;
    if (poly == "anticommutator")
        mp = anticommutator_inf_law(in, order);
    else if (poly == "commutator")
        mp = commutator_inf_law(in, order);
    else
        throw ParseError("poly must be anticommutator or commutator");
    json payload{{"inf_moments", seq_json(mp)},
                 {"g", series_json(inf_law_g_series(mp, order))}};
    if (poly == "anticommutator" && doc.contains("x2_atoms")) {
        AtomicMeasure x2;
        for (const auto& a : doc["x2_atoms"]) {
            if (!a.contains("t") || !a.contains("w"))
                throw ParseError("x2_atoms entries need 't' and 'w'");
            x2.add(Quad(parse_scalar(a["t"], "t").real()),
                   Quad(parse_scalar(a["w"], "w").real()));
        }
        json atoms = json::array();
        for (const auto& a : anticommutator_target(x2, in.m1, in.m2).atoms())
            atoms.push_back(json{{"t", quad_json(a.t)}, {"w", quad_json(a.w)}});
        payload["atoms"] = atoms;
    }
    json config{{"subcommand", "inf-law"}, {"poly", poly}, {"order", order}};
    write_output(out_path, emit(config, payload));
    return 0;
}

int run_boolean_poly(const std::string& in_path, const std::string& out_path,
                     int order) {
    json doc = read_input(in_path);
    BooleanPolyInput in;
    in.a = parse_field(doc, "a", Scalar(1));
    in.b = parse_field(doc, "b", Scalar(1));
    in.beta1_x1 = parse_field(doc, "beta1_x1", Scalar(0), true);
    in.beta2_x1 = parse_field(doc, "beta2_x1", Scalar(0), true);
    in.beta1_x2 = parse_field(doc, "beta1_x2", Scalar(0), true);
    in.beta2_x2 = parse_field(doc, "beta2_x2", Scalar(0), true);
    in.beta1p_x1 = parse_field(doc, "beta1p_x1", Scalar(0));
    in.beta2p_x1 = parse_field(doc, "beta2p_x1", Scalar(0));
    in.beta1p_x2 = parse_field(doc, "beta1p_x2", Scalar(0));
    in.beta2p_x2 = parse_field(doc, "beta2p_x2", Scalar(0));
    if (order < 1 || order > env_cap(24)) throw SizeLimitError("order outside 1..cap");
    json payload;
    payload["beta"] = seq_json(boolean_poly_cumulants(in, order));
    payload["beta_prime"] = seq_json(inf_boolean_poly_cumulants(in, order));
    try {
        BooleanPolyLaw law = boolean_poly_moments(in, order);
        payload["m"] = seq_json(law.m);
        json atoms = json::array();
        for (const auto& a : law.atoms.atoms())
            atoms.push_back(json{{"t", quad_json(a.t)}, {"w", quad_json(a.w)}});
        payload["atoms"] = atoms;
    } catch (const DegenerateRootError& e) {
        payload["atoms_note"] = e.what();
    }
    try {
        GammaState st = gamma_recurrence(in, order);
        payload["gamma_o"] = seq_json(st.gamma_o);
        payload["gamma_e"] = seq_json(st.gamma_e);
    } catch (const PreconditionError&) {
        // gamma recurrence undefined when alpha1 or alpha2 vanishes
    }
    json config{{"subcommand", "boolean-poly"}, {"order", order}};
    write_output(out_path, emit(config, payload));
    return 0;
}

DeterminingSequences parse_determining(const json& doc) {
    DeterminingSequences ds;
    ds.alpha = parse_seq(doc, "alpha", true);
    ds.beta = parse_seq(doc, "beta", true);
    ds.alphap = parse_seq(doc, "alphap", false);
    ds.betap = parse_seq(doc, "betap", false);
    return ds;
}

int run_rdiagonal(const std::string& in_path, const std::string& out_path, int order) {
    json doc = read_input(in_path);
    if (order < 1 || order > env_cap(12)) throw SizeLimitError("order outside 1..cap");
    json config{{"subcommand", "rdiagonal"}, {"order", order}};
    if (doc.contains("first") && doc.contains("second")) {
        StarTables a = rdiag_star_tables(parse_determining(doc["first"]));
        StarTables b = rdiag_star_tables(parse_determining(doc["second"]));
        ClosureReport rep = check_inf_rdiag_closure(a, b, order);
        json payload{{"closed", rep.closed}, {"checked", rep.checked},
                     {"failures", rep.failures}};
        write_output(out_path, emit(config, payload));
        return rep.closed ? 0 : 1;
    }
    if (doc.contains("kappa2_x1")) {
        Scalar k2 = parse_field(doc, "kappa2_x1", Scalar(0), true);
        Sequence infc = parse_seq(doc, "x2_inf_cumulants", true);
        Scalar m1 = parse_field(doc, "m1_x1", Scalar(0));
        json payload{{"alternating",
                      seq_json(inf_rdiag_alternating_cumulants(k2, infc, order, m1))}};
        write_output(out_path, emit(config, payload));
        return 0;
    }
    DeterminingSequences ds = parse_determining(doc);
    json payload{
        {"square_aastar", seq_json(inf_cumulants_of_square(ds, SquareKind::AAstar, order))},
        {"square_astara", seq_json(inf_cumulants_of_square(ds, SquareKind::AstarA, order))}};
    write_output(out_path, emit(config, payload));
    return 0;
}

int run_bridge(const std::string& in_path, const std::string& out_path,
               const std::string& mode, int max_len) {
    json doc = read_input(in_path);
    if (max_len < 3 || max_len > env_cap(12))
        throw SizeLimitError("max-len outside 3..cap");
    if (!doc.contains("algebras") || !doc["algebras"].is_array() ||
        doc["algebras"].size() < 2)
        throw ParseError("need an 'algebras' array with at least two entries");
    MarginalSpec marginals;
    int letters = 0;
    for (const auto& alg : doc["algebras"]) {
        Sequence m = parse_seq(alg, "moments", true);
        Sequence mp = parse_seq(alg, "inf_moments", false);
        marginals.set_marginal(letters++, m, mp);
    }
    IdempotentModel model;
    model.phi_prime_j = parse_field(doc, "phi_prime_j", Scalar(1));
    if (model.phi_prime_j.is_zero()) throw ParseError("phi_prime_j must be nonzero");
    model.phi = [marginals](const std::vector<int>& w) {
        return eval_free_word(marginals, w, false).std_part;
    };
    model.phi_prime = [marginals](const std::vector<int>& w) {
        return eval_free_word(marginals, w).inf_part;
    };

    IndependenceReport rep;
    if (mode == "boolean") {
        std::vector<std::vector<JWord>> elems(letters);
        for (int i = 0; i < letters; ++i) {
            for (int reps = 1; 2 * reps + 1 <= max_len; ++reps) {
                JWord w{kJ};
                for (int r = 0; r < reps; ++r) {
                    w.push_back(i);
                    w.push_back(kJ);
                }
                elems[i].push_back(std::move(w));
            }
        }
        rep = verify_boolean_independence(model, elems, max_len);
    } else if (mode == "monotone") {
        std::vector<JWord> b_elems = {{kJ, 0, kJ}};
        if (max_len >= 5) b_elems.push_back({kJ, 0, kJ, 0, kJ});
        int max_n = std::max(1, (max_len - 1) / 4);
        rep = verify_monotone_independence(model, b_elems, {1}, max_n);
    } else {
        throw ParseError("mode must be boolean or monotone");
    }
    json config{{"subcommand", "bridge"}, {"mode", mode}, {"max_len", max_len}};
    json payload{{"checked", rep.checked},
                 {"passed", rep.checked - static_cast<long long>(rep.failures.size())},
                 {"failures", rep.failures}};
    write_output(out_path, emit(config, payload));
    return rep.holds ? 0 : 1;
}

int run_simulate(const std::string& out_path, const std::string& poly, int n_dim,
                 int samples, std::uint64_t seed, int orders, int threads,
                 const std::string& format, const std::string& a_csv,
                 const std::string& b_csv) {
    EnsembleSpec spec;
    spec.n_dim = n_dim;
    spec.samples = samples;
    spec.seed = seed;
    if (!a_csv.empty()) spec.a_eigs = parse_rat_list(a_csv);
    if (!b_csv.empty()) spec.b_eigs = parse_rat_list(b_csv);
    if (spec.a_eigs.empty() && poly != "bridge") spec.a_eigs = {Rat(1)};
    if (spec.b_eigs.empty()) {
        // comm fixture: traceless with tr(B^2) = 1; others: tr(B) = 1, tr(B^2) = 2
        for (int i = 0; i < n_dim; ++i)
            spec.b_eigs.push_back(poly == "comm" ? Rat(i % 2 == 0 ? 1 : -1)
                                                 : Rat(i % 2 == 0 ? 2 : 0));
    }
    if (orders < 1 || orders > 8) throw SizeLimitError("orders outside 1..8");

    std::vector<EstimatorResult> results;
    if (poly == "comm")
        results = estimate_inf_moments(spec, PolyKind::Commutator, orders, threads);
    else if (poly == "anticomm")
        results = estimate_inf_moments(spec, PolyKind::Anticommutator, orders, threads);
    else if (poly == "bridge") {
        std::vector<JWord> words = {{kJ, 0, kJ}, {kJ, 0, kJ, 0, kJ}, {kJPerp, 0, kJ}};
        results = estimate_boolean_bridge(spec, words, threads);
    } else {
        throw ParseError("poly must be comm, anticomm, or bridge");
    }

    json config{{"subcommand", "simulate"}, {"poly", poly},    {"n", n_dim},
                {"samples", samples},       {"seed", seed},    {"orders", orders}};
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back(json{{"poly", r.id}, {"n", r.order},
                               {"empirical_mean", r.mean}, {"stderr", r.stderr_},
                               {"theory", r.theory}, {"zscore", r.zscore}});
        write_output(out_path, emit(config, {{"results", arr}}));
        return 0;
    }
    std::ostringstream os;
    os << "poly,n,empirical_mean,stderr,theory,zscore\n";
    for (const auto& r : results)
        os << r.id << ',' << r.order << ',' << num(r.mean) << ',' << num(r.stderr_)
           << ',' << num(r.theory) << ',' << num(r.zscore) << '\n';
    write_output(out_path, os.str());
    return 0;
}

int run_spectral_shift(const std::string& in_path, const std::string& out_path,
                       int order) {
    json doc = read_input(in_path);
    Sequence m = parse_seq(doc, "moments", true);
    if (order == 0) order = static_cast<int>(m.size());
    if (order < 1 || order > env_cap(24)) throw SizeLimitError("order outside 1..cap");
    Sequence tau = spectral_shift_series(m, order);
    json config{{"subcommand", "spectral-shift"}, {"order", order}};
    write_output(out_path, emit(config, {{"tau", seq_json(tau)}}));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for infinitesimal free and Boolean probability"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string in_path, out_path, format = "json";
    // shared options are registered per subcommand so unknown flags are rejected
    auto add_io = [&](CLI::App* sub, bool with_format = false) {
        sub->add_option("--input,-i", in_path, "input JSON path ('-' for stdin)");
        sub->add_option("--output,-o", out_path, "output path ('-' for stdout)");
        if (with_format)
            sub->add_option("--format", format, "output format: json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
    };

    int n = 4;
    std::string cls = "nc";
    auto* p_parts = app.add_subcommand("partitions", "enumerate a partition lattice");
    p_parts->add_option("--n", n, "ground-set size")->required();
    p_parts->add_option("--class", cls, "nc | interval | cyclic | all");
    add_io(p_parts);

    std::string direction = "to-cumulants";
    auto* p_trans = app.add_subcommand("transform", "moment/cumulant transforms");
    p_trans->add_option("--direction", direction, "to-cumulants | to-moments");
    add_io(p_trans, true);

    std::string series_op = "cauchy";
    int order = 0;
    auto* p_series = app.add_subcommand("series", "formal transform series");
    p_series->add_option("--op", series_op, "cauchy | r | psi | eta | inf-g");
    p_series->add_option("--order", order, "truncation order");
    add_io(p_series);

    std::string poly = "anticommutator";
    auto* p_law = app.add_subcommand("inf-law", "free polynomial infinitesimal laws");
    p_law->add_option("poly", poly, "anticommutator | commutator");
    p_law->add_option("--order", order, "number of moments");
    add_io(p_law);

    auto* p_bool = app.add_subcommand("boolean-poly", "Boolean polynomial law");
    p_bool->add_option("--order", order, "number of entries")->required();
    add_io(p_bool);

    auto* p_rdiag = app.add_subcommand("rdiagonal", "infinitesimal R-diagonal data");
    p_rdiag->add_option("--order", order, "max order")->required();
    add_io(p_rdiag);

    std::string mode = "boolean";
    int max_len = 8;
    auto* p_bridge = app.add_subcommand("bridge", "independence verification sweeps");
    p_bridge->add_option("--mode", mode, "boolean | monotone");
    p_bridge->add_option("--max-len", max_len, "max word token length");
    add_io(p_bridge);

    int dim = 64, samples = 100, orders = 4, threads = 1;
    std::uint64_t seed = 1;
    std::string sim_poly = "comm", a_csv, b_csv;
    auto* p_sim = app.add_subcommand("simulate", "finite-N Monte Carlo harness");
    p_sim->add_option("--n", dim, "matrix size");
    p_sim->add_option("--samples", samples, "number of samples");
    p_sim->add_option("--seed", seed, "RNG seed");
    p_sim->add_option("--poly", sim_poly, "comm | anticomm | bridge");
    p_sim->add_option("--orders", orders, "max moment order");
    p_sim->add_option("--threads", threads, "worker threads");
    p_sim->add_option("--a-eigs", a_csv, "comma-separated eigenvalues of A");
    p_sim->add_option("--b-eigs", b_csv, "comma-separated eigenvalues of B");
    add_io(p_sim, true);

    auto* p_shift = app.add_subcommand("spectral-shift", "Markov-Krein tau sequence");
    p_shift->add_option("--order", order, "number of tau entries");
    add_io(p_shift);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (p_parts->parsed()) return run_partitions(n, cls, out_path);
        if (p_trans->parsed()) return run_transform(in_path, out_path, direction, format);
        if (p_series->parsed()) return run_series(in_path, out_path, series_op, order);
        if (p_law->parsed()) return run_inf_law(in_path, out_path, poly, order);
        if (p_bool->parsed()) return run_boolean_poly(in_path, out_path, order);
        if (p_rdiag->parsed()) return run_rdiagonal(in_path, out_path, order);
        if (p_bridge->parsed()) return run_bridge(in_path, out_path, mode, max_len);
        if (p_sim->parsed())
            return run_simulate(out_path, sim_poly, dim, samples, seed, orders, threads,
                                p_sim->count("--format") ? format : std::string("csv"),
                                a_csv, b_csv);
        if (p_shift->parsed()) return run_spectral_shift(in_path, out_path, order);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const SizeLimitError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
