#include "gbas/experiment.hpp"

#include "gbas/baselines.hpp"
#include "gbas/csv.hpp"
#include "gbas/weights_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gbas {

using nlohmann::json;

RrtConfig resolve_rrt(const RrtSettings& settings, Index latent_dim) {
    RrtConfig cfg;
    if (settings.interval.size() == 1) {
        cfg.interval = Vector::Constant(latent_dim, settings.interval[0]);
    } else {
        if (static_cast<Index>(settings.interval.size()) != latent_dim)
            throw ConfigError("rrt interval length does not match the latent dimension");
        cfg.interval = Eigen::Map<const Vector>(settings.interval.data(),
                                                static_cast<Index>(settings.interval.size()));
    }
    cfg.max_iters = settings.max_iters;
    cfg.step_delta = settings.step_delta.value_or(0.05 * cfg.interval.maxCoeff());
    cfg.seed = settings.seed;
    return cfg;
}

namespace {

Vector json_to_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(where + ": expected an array of numbers");
        v[static_cast<Index>(i)] = j[i].get<double>();
    }
    return v;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }

    ExperimentConfig cfg;
    if (!doc.contains("generator")) throw ConfigError("config: missing generator path");
    cfg.generator_path = doc["generator"].get<std::string>();
    if (doc.contains("discriminator") && !doc["discriminator"].is_null())
        cfg.discriminator_path = doc["discriminator"].get<std::string>();

    if (doc.contains("queries")) {
        const json& q = doc["queries"];
        if (q.is_array()) {
            for (const json& jq : q) cfg.queries.push_back(json_to_vector(jq, "config queries"));
        } else if (q.is_object()) {
            RandomQueries rq;
            rq.count = q.value("count", 0);
            rq.seed = q.value("seed", std::uint64_t{0});
            cfg.random_queries = rq;
        } else {
            throw ConfigError("config: queries must be an array or {count, seed}");
        }
    }

    if (doc.contains("target_layers"))
        for (const json& jl : doc["target_layers"]) cfg.target_layers.push_back(jl.get<Index>());

    if (doc.contains("beropt")) {
        const json& b = doc["beropt"];
        cfg.beropt.lambda = b.value("lambda", cfg.beropt.lambda);
        cfg.beropt.learning_rate = b.value("learning_rate", cfg.beropt.learning_rate);
        cfg.beropt.max_iters = b.value("max_iters", cfg.beropt.max_iters);
        cfg.beropt.samples_per_step = b.value("samples_per_step", cfg.beropt.samples_per_step);
        cfg.beropt.threshold_p = b.value("threshold_p", cfg.beropt.threshold_p);
        cfg.beropt.seed = b.value("seed", cfg.beropt.seed);
        cfg.beropt.convergence_tol = b.value("convergence_tol", cfg.beropt.convergence_tol);
    }

    if (doc.contains("rrt")) {
        const json& r = doc["rrt"];
        if (r.contains("interval")) {
            if (r["interval"].is_number()) {
                cfg.rrt.interval = {r["interval"].get<double>()};
            } else {
                cfg.rrt.interval.clear();
                for (const json& ji : r["interval"]) cfg.rrt.interval.push_back(ji.get<double>());
            }
        }
        cfg.rrt.max_iters = r.value("max_iters", cfg.rrt.max_iters);
        if (r.contains("step_delta")) cfg.rrt.step_delta = r["step_delta"].get<double>();
        cfg.rrt.seed = r.value("seed", cfg.rrt.seed);
    }

    if (doc.contains("baseline_n") && !doc["baseline_n"].is_null())
        cfg.baseline_n = doc["baseline_n"].get<int>();
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    cfg.write_loss_trace = doc.value("write_loss_trace", cfg.write_loss_trace);
    if (doc.contains("feature_mode")) {
        const std::string mode = doc["feature_mode"].get<std::string>();
        if (mode == "post")
            cfg.feature_mode = FeatureMode::PostActivation;
        else if (mode == "pre")
            cfg.feature_mode = FeatureMode::PreActivation;
        else
            throw ConfigError("config: feature_mode must be 'post' or 'pre'");
    }
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.generator_path.empty()) throw ConfigError("config: generator path is empty");
    if (!std::filesystem::exists(cfg.generator_path))
        throw ConfigError("config: generator file not found: " + cfg.generator_path);
    if (cfg.discriminator_path && !std::filesystem::exists(*cfg.discriminator_path))
        throw ConfigError("config: discriminator file not found: " + *cfg.discriminator_path);
    const bool has_random = cfg.random_queries && cfg.random_queries->count > 0;
    if (cfg.queries.empty() && !has_random)
        throw ConfigError("config: queries list is empty");
    if (cfg.target_layers.empty()) throw ConfigError("config: target_layers is empty");
    if (cfg.output_dir.empty()) throw ConfigError("config: output_dir is empty");
    if (cfg.baseline_n && *cfg.baseline_n < 1)
        throw ConfigError("config: baseline_n must be >= 1");
    if (cfg.rrt.interval.empty()) throw ConfigError("config: rrt interval is empty");
    for (double v : cfg.rrt.interval)
        if (!(v > 0.0)) throw ConfigError("config: rrt interval entries must be positive");
}

namespace {

std::string cell_name(std::size_t query_index, Index layer) {
    std::ostringstream os;
    os << 'q' << std::setw(3) << std::setfill('0') << query_index << "_l" << layer;
    return os.str();
}

json beropt_record(const BerOptResult& r) {
    json rec;
    rec["theta_star"] = {{"layer_index", r.theta_star.layer_index},
                         {"theta", vector_to_json(r.theta_star.theta)}};
    rec["keep_set"] = r.keep_set;
    rec["final_loss"] = r.final_loss;
    rec["distortion"] = r.distortion;
    rec["iterations"] = r.loss_trace.size();
    rec["converged"] = r.converged;
    return rec;
}

json indicator_record(const HalfspaceIndicator& ind) {
    json entries = json::array();
    for (Index i = 0; i < ind.entries.size(); ++i) entries.push_back(ind.entries[i]);
    return json{{"layer_index", ind.layer_index}, {"entries", std::move(entries)}};
}

void write_loss_trace_csv(const std::filesystem::path& path, const std::vector<double>& trace) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write loss trace: " + path.string());
    out << "iteration,loss\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << i << ',' << format_double(trace[i]) << '\n';
}

std::string metrics_header(Index disc_layers, bool with_layer_column) {
    std::string header = with_layer_column ? "model_id,query_id,method,layer,sigma"
                                           : "model_id,query_id,method,sigma,max_distortion";
    for (Index l = 1; l <= disc_layers; ++l) header += ",cos_l" + std::to_string(l);
    if (with_layer_column) header += ",max_distortion";
    return header;
}

std::string metrics_row(const std::string& model_id, std::size_t query_id,
                        const MetricReport& report, std::optional<Index> layer) {
    std::string row = model_id + ',' + std::to_string(query_id) + ',' +
                      sample_method_name(report.method);
    if (layer) row += ',' + std::to_string(*layer) + ',' + format_double(report.sigma);
    else row += ',' + format_double(report.sigma) + ',' + format_double(report.max_region_distortion);
    for (const LayerCosine& lc : report.cosine_by_layer)
        row += ',' + format_double(lc.mean_cosine);
    if (layer) row += ',' + format_double(report.max_region_distortion);
    return row;
}

void write_std_image(const Network& net, const SampleSet& samples,
                     const std::filesystem::path& path) {
    const auto shape = *net.output_shape;
    const Vector stds = output_std_per_element(net, samples);
    if (stds.size() != shape[0] * shape[1]) return;  // metadata does not match output
    const double max_std = stds.maxCoeff();
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(stds.size()), 0);
    if (max_std > 0.0)
        for (Index i = 0; i < stds.size(); ++i)
            gray[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(std::lround(255.0 * stds[i] / max_std));
    write_pgm(path, shape[1], shape[0], gray);
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, std::ostream& diag) {
    validate_config(cfg);

    const Network gen = load_network(cfg.generator_path);
    std::optional<Network> disc;
    if (cfg.discriminator_path) {
        disc = load_network(*cfg.discriminator_path);
        if (disc->latent_dim != gen.output_dim())
            throw ConfigError("config: discriminator input dim does not match generator "
                              "output dim");
    }
    for (Index layer : cfg.target_layers)
        if (layer < 1 || layer > gen.num_layers())
            throw ConfigError("config: target layer " + std::to_string(layer) +
                              " out of range [1, " + std::to_string(gen.num_layers()) + "]");

    std::vector<Vector> queries = cfg.queries;
    if (cfg.random_queries) {
        Rng rng(cfg.random_queries->seed);
        for (int i = 0; i < cfg.random_queries->count; ++i)
            queries.push_back(rng.gaussian_vector(gen.latent_dim));
    }
    for (const Vector& q : queries)
        if (q.size() != gen.latent_dim)
            throw ConfigError("config: query dimension does not match generator latent_dim");

    const std::filesystem::path out_dir(cfg.output_dir);
    std::filesystem::create_directories(out_dir);
    const std::string model_id = std::filesystem::path(cfg.generator_path).stem().string();
    const Index disc_layers = disc ? disc->num_layers() : 0;

    std::vector<std::string> summary_rows;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        const Vector& query = queries[qi];
        for (Index layer : cfg.target_layers) {
            const std::filesystem::path cell_dir = out_dir / cell_name(qi, layer);
            std::filesystem::create_directories(cell_dir);

            BerOptConfig bo = cfg.beropt;
            bo.seed = mix_seed(cfg.beropt.seed, qi, static_cast<std::uint64_t>(layer), 1);
            RrtConfig rrt = resolve_rrt(cfg.rrt, gen.latent_dim);
            rrt.seed = mix_seed(cfg.rrt.seed, qi, static_cast<std::uint64_t>(layer), 2);

            const EgbasResult eg = e_gbas(gen, query, layer, bo.threshold_p, bo, rrt);
            for (Index u : eg.dropped_units)
                diag << "warning: query " << qi << " layer " << layer << ": kept unit " << u
                     << " sits exactly on its boundary; dropped from the keep-set\n";

            write_points_csv(cell_dir / "points_egbas.csv", to_point_rows(eg.exploration),
                             gen.latent_dim);
            if (cfg.write_loss_trace)
                write_loss_trace_csv(cell_dir / "loss_trace.csv", eg.beropt.loss_trace);

            const EpsCalibration cal =
                calibrate(eg.exploration.accepted, eg.exploration.rejected);
            const int n = cfg.baseline_n.value_or(
                static_cast<int>(eg.exploration.accepted.size()));
            const auto l2_points = sample_l2_ball(
                query, cal.eps_l2, n,
                mix_seed(cfg.rrt.seed, qi, static_cast<std::uint64_t>(layer), 3));
            const auto linf_points = sample_linf_ball(
                query, cal.eps_linf, n,
                mix_seed(cfg.rrt.seed, qi, static_cast<std::uint64_t>(layer), 4));
            write_points_csv(cell_dir / "points_eps_l2.csv", to_point_rows(l2_points, "eps_l2"),
                             gen.latent_dim);
            write_points_csv(cell_dir / "points_eps_linf.csv",
                             to_point_rows(linf_points, "eps_linf"), gen.latent_dim);

            json record;
            record["query"] = vector_to_json(query);
            record["layer"] = layer;
            record["beropt"] = beropt_record(eg.beropt);
            record["indicator"] = indicator_record(eg.region.indicator);
            record["dropped_units"] = eg.dropped_units;
            record["calibration"] = {{"z_avg", vector_to_json(cal.z_avg)},
                                     {"eps_l2", cal.eps_l2},
                                     {"eps_linf", cal.eps_linf}};
            record["accepted_count"] = eg.exploration.accepted.size();
            record["rejected_count"] = eg.exploration.rejected.size();
            {
                std::ofstream rec_out(cell_dir / "record.json");
                if (!rec_out) throw IoError("cannot write record.json");
                rec_out << record.dump(2) << '\n';
            }

            const std::array<SampleSet, 3> sets = {
                SampleSet{SampleMethod::EGBAS, query, layer, eg.exploration.accepted},
                SampleSet{SampleMethod::EpsL2, query, layer, l2_points},
                SampleSet{SampleMethod::EpsLinf, query, layer, linf_points}};

            std::ofstream metrics_out(cell_dir / "metrics.csv");
            if (!metrics_out) throw IoError("cannot write metrics.csv");
            metrics_out << metrics_header(disc_layers, false) << '\n';
            for (const SampleSet& set : sets) {
                const MetricReport report = compute_metrics(
                    gen, disc ? &*disc : nullptr, set, query, cfg.feature_mode);
                for (const LayerCosine& lc : report.cosine_by_layer)
                    if (lc.excluded > 0)
                        diag << "warning: query " << qi << " layer " << layer << " method "
                             << sample_method_name(set.method) << ": " << lc.excluded
                             << " samples excluded at discriminator layer " << lc.layer
                             << " (zero-norm features)\n";
                metrics_out << metrics_row(model_id, qi, report, std::nullopt) << '\n';
                summary_rows.push_back(metrics_row(model_id, qi, report, layer));

                if (gen.output_shape)
                    write_std_image(gen, set,
                                    cell_dir / (std::string("std_") +
                                                sample_method_name(set.method) + ".pgm"));
            }

            diag << "cell " << cell_name(qi, layer) << ": accepted "
                 << eg.exploration.accepted.size() << ", rejected "
                 << eg.exploration.rejected.size() << ", keep-set "
                 << eg.beropt.keep_set.size() << "/" << gen.layer_dim(layer) << "\n";
        }
    }

    std::ofstream summary(out_dir / "summary.csv");
    if (!summary) throw IoError("cannot write summary.csv");
    summary << metrics_header(disc_layers, true) << '\n';
    for (const std::string& row : summary_rows) summary << row << '\n';
}

int cli_run(const ExperimentConfig& cfg, std::ostream& diag) {
    try {
        run_experiment(cfg, diag);
        return 0;
    } catch (const ConfigError& e) {
        diag << "error: category=config message=\"" << e.what() << "\"\n";
        return 2;
    } catch (const std::exception& e) {
        diag << "error: category=runtime message=\"" << e.what() << "\"\n";
        return 1;
    }
}

}  // namespace gbas
