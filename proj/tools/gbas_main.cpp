// Command-line shell around the gbas library. Each subcommand is
// independently runnable on saved artifacts so any pipeline stage can be
// reproduced or debugged in isolation.

#include "gbas/baselines.hpp"
#include "gbas/csv.hpp"
#include "gbas/experiment.hpp"
#include "gbas/grid_figure.hpp"
#include "gbas/toy_models.hpp"
#include "gbas/weights_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gbas;
using nlohmann::json;

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) values.push_back(parse_double(field));
    if (values.empty()) throw ConfigError(what + ": expected comma-separated numbers");
    return values;
}

Vector parse_vector(const std::string& text, const std::string& what) {
    const auto values = parse_number_list(text, what);
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Vector resolve_query(const std::string& query_text, const std::string& query_file,
                     std::size_t query_index) {
    if (!query_text.empty()) return parse_vector(query_text, "--query");
    if (query_file.empty()) throw ConfigError("provide --query or --query-file");
    const auto queries = read_query_file(query_file);
    if (query_index >= queries.size())
        throw ConfigError("--query-index out of range for " + query_file);
    return queries[query_index];
}

IndexSet parse_index_list(const std::string& text) {
    IndexSet indices;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) indices.push_back(std::stoll(field));
    return indices;
}

std::vector<Vector> rows_of_kind(const std::vector<PointRow>& rows, const std::string& kind) {
    std::vector<Vector> points;
    for (const PointRow& row : rows)
        if (row.kind == kind) points.push_back(row.coords);
    return points;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

struct MakeToyArgs {
    std::string kind = "random_mlp";
    std::string dims;
    std::string activation = "relu";
    double slope = 0.2;
    std::uint64_t seed = 0;
    std::string out;
};

int run_make_toy(const MakeToyArgs& args) {
    ToyModelSpec spec;
    spec.kind = toy_model_kind_from_name(args.kind);
    if (!args.dims.empty())
        for (double d : parse_number_list(args.dims, "--dims"))
            spec.dims.push_back(static_cast<Index>(d));
    spec.activation = activation_from_name(args.activation);
    spec.slope = args.slope;
    spec.seed = args.seed;
    const Network net = make_toy_model(spec, args.out);
    std::cerr << "wrote " << args.out << " (latent " << net.latent_dim << ", layers "
              << net.num_layers() << ")\n";
    return 0;
}

struct BerOptArgs {
    std::string model;
    std::string query;
    std::string query_file;
    std::size_t query_index = 0;
    Index layer = 1;
    BerOptConfig cfg;
    std::string record = "beropt.json";
    std::string trace;
};

int run_beropt_cmd(const BerOptArgs& args) {
    const Network net = load_network(args.model);
    const Vector z0 = resolve_query(args.query, args.query_file, args.query_index);
    const BerOptResult result = beropt(net, z0, args.layer, args.cfg);

    json rec;
    rec["query"] = vector_to_json(z0);
    rec["theta_star"] = {{"layer_index", result.theta_star.layer_index},
                         {"theta", vector_to_json(result.theta_star.theta)}};
    rec["keep_set"] = result.keep_set;
    rec["final_loss"] = result.final_loss;
    rec["distortion"] = result.distortion;
    rec["iterations"] = result.loss_trace.size();
    rec["converged"] = result.converged;
    std::ofstream out(args.record);
    if (!out) throw IoError("cannot write record: " + args.record);
    out << rec.dump(2) << '\n';

    if (!args.trace.empty()) {
        std::ofstream trace_out(args.trace);
        if (!trace_out) throw IoError("cannot write trace: " + args.trace);
        trace_out << "iteration,loss\n";
        for (std::size_t i = 0; i < result.loss_trace.size(); ++i)
            trace_out << i << ',' << format_double(result.loss_trace[i]) << '\n';
    }
    std::cerr << "keep-set size " << result.keep_set.size() << ", distortion "
              << result.distortion << ", converged " << (result.converged ? "yes" : "no")
              << "\n";
    return 0;
}

struct ExploreArgs {
    std::string model;
    std::string query;
    std::string query_file;
    std::size_t query_index = 0;
    Index layer = 1;
    std::string record;
    std::string keep;
    std::string interval;
    std::optional<double> step_delta;
    int max_iters = 20000;
    std::uint64_t seed = 0;
    std::string out = "points.csv";
};

int run_explore(const ExploreArgs& args) {
    const Network net = load_network(args.model);
    const Vector z0 = resolve_query(args.query, args.query_file, args.query_index);

    IndexSet keep;
    if (!args.keep.empty()) {
        keep = parse_index_list(args.keep);
    } else if (!args.record.empty()) {
        std::ifstream in(args.record);
        if (!in) throw IoError("cannot open record: " + args.record);
        json rec;
        in >> rec;
        for (const json& ji : rec["keep_set"]) keep.push_back(ji.get<Index>());
    } else {
        throw ConfigError("provide --keep or --record to define the region");
    }

    RrtSettings settings;
    if (!args.interval.empty()) settings.interval = parse_number_list(args.interval, "--interval");
    settings.max_iters = args.max_iters;
    settings.step_delta = args.step_delta;
    settings.seed = args.seed;
    const RrtConfig cfg = resolve_rrt(settings, net.latent_dim);

    RegionSpec region{&net, indicator_from_query(net, z0, args.layer, keep)};
    const ExplorationResult result = gb_rrt(z0, region, cfg);
    write_points_csv(args.out, to_point_rows(result), net.latent_dim);
    std::cerr << "accepted " << result.accepted.size() << ", rejected "
              << result.rejected.size() << "\n";
    return 0;
}

struct BaselineArgs {
    std::string points;
    std::string query;
    std::string query_file;
    std::size_t query_index = 0;
    std::optional<int> n;
    std::uint64_t seed = 0;
    std::string out_l2 = "points_eps_l2.csv";
    std::string out_linf = "points_eps_linf.csv";
    std::string calibration;
};

int run_baseline(const BaselineArgs& args) {
    const auto rows = read_points_csv(args.points);
    const auto accepted = rows_of_kind(rows, "accepted");
    const auto rejected = rows_of_kind(rows, "rejected");
    if (accepted.empty()) throw NumericError("points file has no accepted rows");
    const Vector z0 = resolve_query(args.query, args.query_file, args.query_index);

    const EpsCalibration cal = calibrate(accepted, rejected);
    const int n = args.n.value_or(static_cast<int>(accepted.size()));
    const auto l2 = sample_l2_ball(z0, cal.eps_l2, n, mix_seed(args.seed, 0, 0, 3));
    const auto linf = sample_linf_ball(z0, cal.eps_linf, n, mix_seed(args.seed, 0, 0, 4));
    write_points_csv(args.out_l2, to_point_rows(l2, "eps_l2"), z0.size());
    write_points_csv(args.out_linf, to_point_rows(linf, "eps_linf"), z0.size());

    if (!args.calibration.empty()) {
        json rec;
        rec["z_avg"] = vector_to_json(cal.z_avg);
        rec["eps_l2"] = cal.eps_l2;
        rec["eps_linf"] = cal.eps_linf;
        std::ofstream out(args.calibration);
        if (!out) throw IoError("cannot write calibration: " + args.calibration);
        out << rec.dump(2) << '\n';
    }
    std::cerr << "eps_l2 " << cal.eps_l2 << ", eps_linf " << cal.eps_linf << ", n " << n
              << "\n";
    return 0;
}

struct MetricsArgs {
    std::string model;
    std::string disc;
    std::string query;
    std::string query_file;
    std::size_t query_index = 0;
    Index layer = 1;
    std::string egbas_points;
    std::string l2_points;
    std::string linf_points;
    std::string out = "metrics.csv";
    std::string model_id;
    std::size_t query_id = 0;
    std::string feature_mode = "post";
};

int run_metrics(const MetricsArgs& args) {
    const Network gen = load_network(args.model);
    std::optional<Network> disc;
    if (!args.disc.empty()) disc = load_network(args.disc);
    const Vector z0 = resolve_query(args.query, args.query_file, args.query_index);
    const FeatureMode mode =
        args.feature_mode == "pre" ? FeatureMode::PreActivation : FeatureMode::PostActivation;

    struct Input {
        SampleMethod method;
        const std::string* path;
        const char* kind;
    };
    const std::array<Input, 3> inputs = {
        Input{SampleMethod::EGBAS, &args.egbas_points, "accepted"},
        Input{SampleMethod::EpsL2, &args.l2_points, "eps_l2"},
        Input{SampleMethod::EpsLinf, &args.linf_points, "eps_linf"}};

    const std::string model_id =
        args.model_id.empty() ? std::filesystem::path(args.model).stem().string()
                              : args.model_id;

    std::ofstream out(args.out);
    if (!out) throw IoError("cannot write metrics: " + args.out);
    std::string header = "model_id,query_id,method,sigma,max_distortion";
    const Index disc_layers = disc ? disc->num_layers() : 0;
    for (Index l = 1; l <= disc_layers; ++l) header += ",cos_l" + std::to_string(l);
    out << header << '\n';

    for (const Input& input : inputs) {
        if (input.path->empty()) continue;
        SampleSet set;
        set.method = input.method;
        set.query = z0;
        set.layer_index = args.layer;
        set.points = rows_of_kind(read_points_csv(*input.path), input.kind);
        if (set.points.empty())
            throw NumericError(std::string("no '") + input.kind + "' rows in " + *input.path);
        const MetricReport report =
            compute_metrics(gen, disc ? &*disc : nullptr, set, z0, mode);
        out << model_id << ',' << args.query_id << ',' << sample_method_name(report.method)
            << ',' << format_double(report.sigma) << ','
            << format_double(report.max_region_distortion);
        for (const LayerCosine& lc : report.cosine_by_layer)
            out << ',' << format_double(lc.mean_cosine);
        out << '\n';
    }
    return 0;
}

struct GridFigArgs {
    std::string model;
    Index layer = 1;
    std::string box = "-3,3,-3,3";
    Index resolution = 200;
    std::string overlay;
    std::string out_csv = "grid.csv";
    std::string out_pgm = "grid.pgm";
};

int run_grid_fig(const GridFigArgs& args) {
    const Network net = load_network(args.model);
    const auto box_values = parse_number_list(args.box, "--box");
    if (box_values.size() != 4)
        throw ConfigError("--box expects xmin,xmax,ymin,ymax");
    const GridBox box{box_values[0], box_values[1], box_values[2], box_values[3]};
    const GridCensus census = grid_sign_census(net, args.layer, box, args.resolution);

    std::optional<ExplorationResult> overlay;
    if (!args.overlay.empty()) {
        ExplorationResult result;
        for (const PointRow& row : read_points_csv(args.overlay)) {
            if (row.kind == "accepted")
                result.accepted.push_back(row.coords);
            else if (row.kind == "rejected")
                result.rejected.push_back(row.coords);
        }
        overlay = std::move(result);
    }

    write_grid_csv(census, args.out_csv);
    write_grid_pgm(census, args.out_pgm, overlay ? &*overlay : nullptr);
    std::cerr << "patterns " << census.num_patterns << " over " << args.resolution << "x"
              << args.resolution << " grid\n";
    return 0;
}

struct RunArgs {
    std::string config;
    std::string out;
    std::optional<std::int64_t> seed;
    std::optional<Index> layer;
    std::string query_file;
};

int run_pipeline(const RunArgs& args) {
    ExperimentConfig cfg = load_experiment_config(args.config);
    if (!args.out.empty()) cfg.output_dir = args.out;
    if (args.seed) {
        cfg.beropt.seed = static_cast<std::uint64_t>(*args.seed);
        cfg.rrt.seed = static_cast<std::uint64_t>(*args.seed);
    }
    if (args.layer) cfg.target_layers = {*args.layer};
    if (!args.query_file.empty()) {
        cfg.queries = read_query_file(args.query_file);
        cfg.random_queries.reset();
    }
    return cli_run(cfg, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generative-boundary aware sampling toolkit"};
    app.require_subcommand(1);

    MakeToyArgs toy;
    auto* cmd_toy = app.add_subcommand("make-toy", "Write a toy generator weight file");
    cmd_toy->add_option("--kind", toy.kind, "random_mlp | mnist_like_2d | handcrafted2d");
    cmd_toy->add_option("--dims", toy.dims, "latent,layer1,...,layerL sizes");
    cmd_toy->add_option("--activation", toy.activation, "hidden activation name");
    cmd_toy->add_option("--slope", toy.slope, "leaky_relu slope");
    cmd_toy->add_option("--seed", toy.seed, "rng seed");
    cmd_toy->add_option("--out", toy.out, "output weight file")->required();

    BerOptArgs bo;
    auto* cmd_bo = app.add_subcommand("beropt", "Optimize a Bernoulli boundary mask");
    cmd_bo->add_option("--model", bo.model, "generator weight file")->required();
    cmd_bo->add_option("--query", bo.query, "comma-separated latent vector");
    cmd_bo->add_option("--query-file", bo.query_file, "file with one query per line");
    cmd_bo->add_option("--query-index", bo.query_index, "row to use from --query-file");
    cmd_bo->add_option("--layer", bo.layer, "target layer (1-based)")->required();
    cmd_bo->add_option("--lambda", bo.cfg.lambda, "sparsity weight");
    cmd_bo->add_option("--lr", bo.cfg.learning_rate, "learning rate");
    cmd_bo->add_option("--iters", bo.cfg.max_iters, "max iterations");
    cmd_bo->add_option("--samples", bo.cfg.samples_per_step, "mask draws per step");
    cmd_bo->add_option("--threshold", bo.cfg.threshold_p, "keep-set threshold p");
    cmd_bo->add_option("--seed", bo.cfg.seed, "rng seed");
    cmd_bo->add_option("--tol", bo.cfg.convergence_tol, "convergence tolerance");
    cmd_bo->add_option("--record", bo.record, "output record json");
    cmd_bo->add_option("--trace", bo.trace, "optional loss trace csv");

    ExploreArgs ex;
    auto* cmd_ex = app.add_subcommand("explore", "Run GB-RRT inside a region");
    cmd_ex->add_option("--model", ex.model, "generator weight file")->required();
    cmd_ex->add_option("--query", ex.query, "comma-separated latent vector");
    cmd_ex->add_option("--query-file", ex.query_file, "file with one query per line");
    cmd_ex->add_option("--query-index", ex.query_index, "row to use from --query-file");
    cmd_ex->add_option("--layer", ex.layer, "target layer (1-based)")->required();
    cmd_ex->add_option("--record", ex.record, "beropt record json providing the keep-set");
    cmd_ex->add_option("--keep", ex.keep, "explicit keep-set, e.g. 0,2,5");
    cmd_ex->add_option("--interval", ex.interval, "sampling half-width (scalar or list)");
    double step_delta_flag = -1.0;
    cmd_ex->add_option("--step-delta", step_delta_flag, "step size");
    cmd_ex->add_option("--iters", ex.max_iters, "iterations N");
    cmd_ex->add_option("--seed", ex.seed, "rng seed");
    cmd_ex->add_option("--out", ex.out, "output points csv");

    BaselineArgs bl;
    auto* cmd_bl = app.add_subcommand("baseline", "Calibrate and sample epsilon balls");
    cmd_bl->add_option("--points", bl.points, "E-GBAS points csv")->required();
    cmd_bl->add_option("--query", bl.query, "comma-separated latent vector");
    cmd_bl->add_option("--query-file", bl.query_file, "file with one query per line");
    cmd_bl->add_option("--query-index", bl.query_index, "row to use from --query-file");
    int n_flag = -1;
    cmd_bl->add_option("--n", n_flag, "samples per ball (default: |accepted|)");
    cmd_bl->add_option("--seed", bl.seed, "rng seed");
    cmd_bl->add_option("--out-l2", bl.out_l2, "output csv for the L2 ball");
    cmd_bl->add_option("--out-linf", bl.out_linf, "output csv for the Linf ball");
    cmd_bl->add_option("--calibration", bl.calibration, "optional calibration json");

    MetricsArgs me;
    auto* cmd_me = app.add_subcommand("metrics", "Compare sample sets");
    cmd_me->add_option("--model", me.model, "generator weight file")->required();
    cmd_me->add_option("--disc", me.disc, "discriminator weight file");
    cmd_me->add_option("--query", me.query, "comma-separated latent vector");
    cmd_me->add_option("--query-file", me.query_file, "file with one query per line");
    cmd_me->add_option("--query-index", me.query_index, "row to use from --query-file");
    cmd_me->add_option("--layer", me.layer, "generator layer the sets were drawn at");
    cmd_me->add_option("--egbas", me.egbas_points, "E-GBAS points csv");
    cmd_me->add_option("--l2", me.l2_points, "eps_l2 points csv");
    cmd_me->add_option("--linf", me.linf_points, "eps_linf points csv");
    cmd_me->add_option("--out", me.out, "output metrics csv");
    cmd_me->add_option("--model-id", me.model_id, "model id column value");
    cmd_me->add_option("--query-id", me.query_id, "query id column value");
    cmd_me->add_option("--feature-mode", me.feature_mode, "post | pre");

    GridFigArgs gf;
    auto* cmd_gf = app.add_subcommand("grid-fig", "Sign-pattern census over a 2-D grid");
    cmd_gf->add_option("--model", gf.model, "generator weight file")->required();
    cmd_gf->add_option("--layer", gf.layer, "target layer (1-based)");
    cmd_gf->add_option("--box", gf.box, "xmin,xmax,ymin,ymax");
    cmd_gf->add_option("--resolution", gf.resolution, "cells per axis");
    cmd_gf->add_option("--overlay", gf.overlay, "points csv to overlay");
    cmd_gf->add_option("--out-csv", gf.out_csv, "output census csv");
    cmd_gf->add_option("--out-pgm", gf.out_pgm, "output graymap");

    RunArgs run_args;
    auto* cmd_run = app.add_subcommand("run", "Full pipeline from a config file");
    cmd_run->add_option("--config", run_args.config, "experiment config json")->required();
    cmd_run->add_option("--out", run_args.out, "output directory (overrides config)");
    std::int64_t seed_flag = 0;
    auto* seed_opt = cmd_run->add_option("--seed", seed_flag, "seed override for all stages");
    Index layer_flag = 0;
    auto* layer_opt = cmd_run->add_option("--layer", layer_flag, "single target layer override");
    cmd_run->add_option("--query-file", run_args.query_file, "query file override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: category=config message=\"" << e.what() << "\"\n";
        return 2;
    }

    try {
        if (*cmd_toy) return run_make_toy(toy);
        if (*cmd_bo) return run_beropt_cmd(bo);
        if (*cmd_ex) {
            if (step_delta_flag > 0.0) ex.step_delta = step_delta_flag;
            return run_explore(ex);
        }
        if (*cmd_bl) {
            if (n_flag > 0) bl.n = n_flag;
            return run_baseline(bl);
        }
        if (*cmd_me) return run_metrics(me);
        if (*cmd_gf) return run_grid_fig(gf);
        if (*cmd_run) {
            if (*seed_opt) run_args.seed = seed_flag;
            if (*layer_opt) run_args.layer = layer_flag;
            return run_pipeline(run_args);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: category=config message=\"" << e.what() << "\"\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: category=runtime message=\"" << e.what() << "\"\n";
        return 1;
    }
    return 0;
}
