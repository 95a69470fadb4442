// skyclear command line: night-photo light-pollution removal front end.
//
// Subcommands
//   restore-sky       adaptive sky restoration from a calibration image or
//                     a saved light profile
//   restore-baseline  uniform-ground-radiance restoration (path integral)
//   restore-city      adaptive restoration with guided-filtered depth
//   restore           alias with --mode {baseline,adaptive}
//   estimate-lights   emit the ground-light profile CSV only
//   simulate          forward model: synthesize a polluted frame from a config
//   curve             altitude-irradiance CSV for plotting
//
// Exit codes: 0 success, 2 usage error, 1 processing error. Diagnostics go
// to stderr; `--json` prints a machine-readable summary to stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "skyclear/adaptive.hpp"
#include "skyclear/baseline.hpp"
#include "skyclear/city.hpp"
#include "skyclear/image_io.hpp"
#include "skyclear/parallel.hpp"
#include "skyclear/scattering.hpp"
#include "skyclear/simulate.hpp"
#include "skyclear/skyline.hpp"

namespace sc = skyclear;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(field, &pos);
            if (pos != field.size()) throw std::invalid_argument(field);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(what + ": cannot parse '" + field + "' as a number");
        }
    }
    if (out.empty()) throw UsageError(what + ": empty value list");
    return out;
}

sc::ChannelTriple parse_triple(const std::string& text, const std::string& what) {
    const std::vector<double> v = parse_csv_doubles(text, what);
    if (v.size() == 1) return {v[0], v[0], v[0]};
    if (v.size() == 3) return {v[0], v[1], v[2]};
    throw UsageError(what + ": expected one value or three comma-separated values");
}

sc::Transfer parse_transfer(const std::string& name, const std::string& what) {
    if (name == "srgb") return sc::Transfer::Srgb;
    if (name == "linear") return sc::Transfer::Linear;
    throw UsageError(what + ": expected 'srgb' or 'linear', got '" + name + "'");
}

struct Opts {
    std::string input;
    std::string output;
    std::string calib_path;
    std::string lights_path;
    std::string mask_path;
    std::string calib_mask_path;
    std::string depth_path;
    std::string dump_depth_path;
    std::string beta = "1e-4";
    std::string a_const;
    std::string row_fractions;
    std::string mode = "adaptive";
    double focal = 0.0;  // 0: default to image width
    double depth_scale = 1.0;
    double meters_per_unit = 1.0;
    int window = 31;
    double profile_sigma = 15.0;
    double calib_exposure = 1.0;
    int gf_radius = 16;
    double gf_eps = 1e-3;
    int threads = 0;
    bool json_out = false;
    std::string in_transfer = "srgb";
    std::string out_transfer = "srgb";
    int bits = 16;
    // curve
    std::string amplitude = "1";
    double ymin = 10.0;
    double ymax = 100000.0;
    int samples = 64;
    // simulate
    std::string config_path;
};

sc::Atmosphere atmosphere_from(const Opts& o) {
    return sc::Atmosphere(parse_triple(o.beta, "--beta"));
}

sc::CameraGeometry geometry_for(const Opts& o, int width, int height) {
    const double focal = o.focal > 0.0 ? o.focal : static_cast<double>(width);
    return sc::CameraGeometry(focal, width, height);
}

sc::RadianceImage load_input(const Opts& o, const std::string& path) {
    return sc::load_image(path, parse_transfer(o.in_transfer, "--input-transfer"));
}

void save_output(const Opts& o, const sc::RadianceImage& img, const std::string& path) {
    if (path.empty()) throw UsageError("no output path: pass -o/--output");
    if (o.bits != 8 && o.bits != 16) throw UsageError("--bits: expected 8 or 16");
    sc::save_image(img, path, parse_transfer(o.out_transfer, "--output-transfer"), o.bits);
}

sc::SkyMask mask_for(const sc::RadianceImage& img, const std::string& mask_path) {
    if (mask_path.empty()) return sc::detect_skyline(img);
    return sc::load_sky_mask(mask_path, img.width(), img.height());
}

std::vector<double> row_fractions_from(const Opts& o) {
    if (o.row_fractions.empty()) return sc::default_row_fractions();
    return parse_csv_doubles(o.row_fractions, "--row-fractions");
}

json triple_json(const sc::ChannelTriple& t) { return json::array({t[0], t[1], t[2]}); }

json profile_stats(const sc::GroundLightProfile& p) {
    json stats;
    static const char* kNames[3] = {"R", "G", "B"};
    for (int ch = 0; ch < sc::kChannels; ++ch) {
        double mn = p.at(ch, 0), mx = p.at(ch, 0), sum = 0.0;
        for (int c = 0; c < p.width(); ++c) {
            const double v = p.at(ch, c);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
        }
        stats[kNames[ch]] = {{"min", mn}, {"max", mx}, {"mean", sum / p.width()}};
    }
    return stats;
}

// ---------------------------------------------------------------- curve ----

json run_curve(const Opts& o) {
    const sc::Atmosphere atm = atmosphere_from(o);
    const sc::ChannelTriple amp = parse_triple(o.amplitude, "--amplitude");
    if (o.output.empty()) throw UsageError("curve: pass -o/--output for the CSV");
    const sc::IrradianceCurve curve =
        sc::emit_irradiance_curve(amp, atm, o.ymin, o.ymax, o.samples);
    sc::save_curve_csv(curve, o.output);
    json summary;
    summary["params"] = {{"beta", triple_json(atm.beta)},
                         {"amplitude", triple_json(amp)},
                         {"ymin", o.ymin},
                         {"ymax", o.ymax},
                         {"n", o.samples}};
    summary["outputs"] = {{"csv", o.output}};
    return summary;
}

// ------------------------------------------------------- estimate/restore --

sc::CalibrationSet calibration_for(const Opts& o, const sc::RadianceImage& input) {
    if (o.calib_path.empty()) throw UsageError("pass --calib <pristine sky image>");
    const sc::RadianceImage calib = load_input(o, o.calib_path);
    const sc::SkyMask input_sky = mask_for(input, o.mask_path);
    const sc::SkyMask calib_sky = mask_for(calib, o.calib_mask_path);
    return sc::align_calibration(input, input_sky, calib, calib_sky, row_fractions_from(o),
                                 o.window, o.calib_exposure);
}

json run_estimate_lights(const Opts& o) {
    if (o.output.empty()) throw UsageError("estimate-lights: pass -o/--output for the CSV");
    if (o.calib_path.empty()) throw UsageError("pass --calib <pristine sky image>");
    const sc::RadianceImage input = load_input(o, o.input);
    const sc::Atmosphere atm = atmosphere_from(o);
    const sc::CameraGeometry geom = geometry_for(o, input.width(), input.height());
    const sc::CalibrationSet cal = calibration_for(o, input);
    const sc::GroundLightProfile profile =
        sc::estimate_light_profile(input, cal, geom, atm, o.profile_sigma);
    sc::save_light_profile(profile, o.output);

    json summary;
    summary["params"] = {{"beta", triple_json(atm.beta)},
                         {"focal_px", geom.focal_px()},
                         {"window", o.window},
                         {"profile_sigma", o.profile_sigma},
                         {"calib_exposure", o.calib_exposure}};
    summary["lights"] = profile_stats(profile);
    summary["outputs"] = {{"lights_csv", o.output}};
    return summary;
}

enum class RestoreKind { Baseline, Adaptive, City };

json run_restore(const Opts& o, RestoreKind kind) {
    // Usage checks come before any file I/O so flag mistakes always exit 2.
    if (o.output.empty()) throw UsageError("no output path: pass -o/--output");
    if (kind == RestoreKind::Baseline) {
        if (o.a_const.empty())
            throw UsageError("baseline restoration needs --a-const <ground radiance>");
    } else {
        if (!o.calib_path.empty() && !o.lights_path.empty())
            throw UsageError("--calib and --lights are mutually exclusive");
        if (o.calib_path.empty() && o.lights_path.empty())
            throw UsageError("pass --calib <pristine sky image> or --lights <profile csv>");
    }
    if (kind == RestoreKind::City && o.depth_path.empty())
        throw UsageError("restore-city: pass --depth <raster> (and --depth-scale if not meters)");

    const sc::RadianceImage input = load_input(o, o.input);
    const int w = input.width();
    const int h = input.height();
    const sc::Atmosphere atm = atmosphere_from(o);
    const sc::CameraGeometry geom = geometry_for(o, w, h);

    json params = {{"beta", triple_json(atm.beta)}, {"focal_px", geom.focal_px()}};
    json summary;

    // Path lengths: explicit raster, else infinite sky everywhere.
    sc::DepthMap depth(w, h);
    if (!o.depth_path.empty())
        depth = sc::load_depth(o.depth_path, o.depth_scale, mask_for(input, o.mask_path));

    sc::RestoreResult res{sc::RadianceImage(w, h), 0.0};
    if (kind == RestoreKind::Baseline) {
        const sc::BaselineParams p(parse_triple(o.a_const, "--a-const"), atm, geom,
                                   o.meters_per_unit);
        res = sc::restore_baseline(input, p, depth);
        params["a_const"] = triple_json(p.a_const);
        params["meters_per_unit"] = o.meters_per_unit;
    } else {
        if (kind == RestoreKind::City) {
            const sc::GuidedFilterParams gf{o.gf_radius, o.gf_eps, o.depth_scale};
            depth = sc::guided_filter(input, depth, gf);
            if (!o.dump_depth_path.empty()) sc::save_depth(depth, o.dump_depth_path);
            params["gf_radius"] = o.gf_radius;
            params["gf_epsilon"] = o.gf_eps;
        }
        sc::GroundLightProfile profile;
        if (!o.lights_path.empty()) {
            profile = sc::load_light_profile(o.lights_path);
        } else {
            const sc::CalibrationSet cal = calibration_for(o, input);
            profile = sc::estimate_light_profile(input, cal, geom, atm, o.profile_sigma);
            params["window"] = o.window;
            params["profile_sigma"] = o.profile_sigma;
            params["calib_exposure"] = o.calib_exposure;
        }
        res = sc::restore_with_profile(input, profile, geom, atm, depth);
        summary["lights"] = profile_stats(profile);
    }

    save_output(o, res.image, o.output);
    summary["params"] = params;
    summary["clamp_fraction"] = res.clamped_fraction;
    summary["outputs"] = {{"image", o.output}};
    return summary;
}

// ------------------------------------------------------------- simulate ----

struct SimConfig {
    int width = 0;
    int height = 0;
    sc::ChannelTriple top{0.1, 0.1, 0.1};
    sc::ChannelTriple bottom{0.1, 0.1, 0.1};
    int stars = 0;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    std::uint64_t noise_seed = 1;
    std::string mode = "adaptive";
    sc::ChannelTriple beta{1e-4, 1e-4, 1e-4};
    double focal = 0.0;
    sc::ChannelTriple a_const{0.0, 0.0, 0.0};
    std::string profile_csv;
    std::optional<sc::ChannelTriple> ramp_start, ramp_end;
    int ground_row = -1;
    double ground_value = 0.0;
    std::string depth_path;
    double depth_scale = 1.0;
    std::string output, base_output, profile_output;
    std::string transfer = "srgb";
    int bits = 16;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

SimConfig parse_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene config: " + path);
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string where = path + ":" + std::to_string(lineno) + ": " + key;
        try {
            if (key == "width") cfg.width = std::stoi(val);
            else if (key == "height") cfg.height = std::stoi(val);
            else if (key == "gradient_top") cfg.top = parse_triple(val, where);
            else if (key == "gradient_bottom") cfg.bottom = parse_triple(val, where);
            else if (key == "stars") cfg.stars = std::stoi(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "noise_sigma") cfg.noise_sigma = std::stod(val);
            else if (key == "noise_seed") cfg.noise_seed = std::stoull(val);
            else if (key == "mode") cfg.mode = val;
            else if (key == "beta") cfg.beta = parse_triple(val, where);
            else if (key == "focal") cfg.focal = std::stod(val);
            else if (key == "a_const") cfg.a_const = parse_triple(val, where);
            else if (key == "profile_csv") cfg.profile_csv = val;
            else if (key == "ramp_start") cfg.ramp_start = parse_triple(val, where);
            else if (key == "ramp_end") cfg.ramp_end = parse_triple(val, where);
            else if (key == "ground_row") cfg.ground_row = std::stoi(val);
            else if (key == "ground_value") cfg.ground_value = std::stod(val);
            else if (key == "depth") cfg.depth_path = val;
            else if (key == "depth_scale") cfg.depth_scale = std::stod(val);
            else if (key == "output") cfg.output = val;
            else if (key == "base_output") cfg.base_output = val;
            else if (key == "profile_output") cfg.profile_output = val;
            else if (key == "transfer") cfg.transfer = val;
            else if (key == "bits") cfg.bits = std::stoi(val);
            else throw UsageError(where + ": unknown key");
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError(where + ": cannot parse value '" + val + "'");
        }
    }
    if (cfg.width < 16 || cfg.height < 16)
        throw UsageError(path + ": width and height (>= 16) are required");
    if (cfg.mode != "adaptive" && cfg.mode != "baseline")
        throw UsageError(path + ": mode must be 'adaptive' or 'baseline'");
    return cfg;
}

json run_simulate(const Opts& o) {
    SimConfig cfg = parse_sim_config(o.config_path);
    if (!o.output.empty()) cfg.output = o.output;  // -o overrides the config
    if (cfg.output.empty())
        throw UsageError(o.config_path + ": set 'output = <path>' or pass -o");

    sc::RadianceImage base =
        sc::make_synthetic_sky(cfg.width, cfg.height, cfg.top, cfg.bottom, cfg.stars, cfg.seed);
    const double focal = cfg.focal > 0.0 ? cfg.focal : static_cast<double>(cfg.width);
    sc::SimScene scene(std::move(base), sc::CameraGeometry(focal, cfg.width, cfg.height));
    scene.atm = sc::Atmosphere(cfg.beta);
    scene.a_const = cfg.a_const;
    scene.noise_sigma = cfg.noise_sigma;
    scene.noise_seed = cfg.noise_seed;

    if (!cfg.depth_path.empty()) {
        // A config-supplied raster carries its own infinities (PFM); nothing
        // is forced to sky here.
        scene.depth = sc::load_depth(cfg.depth_path, cfg.depth_scale,
                                     sc::SkyMask(cfg.width, cfg.height,
                                                 std::vector<int>(cfg.width, 0)));
    } else if (cfg.ground_row >= 0) {
        if (cfg.ground_row > cfg.height || !(cfg.ground_value > 0.0))
            throw UsageError(o.config_path + ": ground_row needs 0..height and ground_value > 0");
        sc::DepthMap d(cfg.width, cfg.height);
        for (int r = cfg.ground_row; r < cfg.height; ++r)
            for (int c = 0; c < cfg.width; ++c) d.at(c, r) = cfg.ground_value;
        scene.depth = std::move(d);
    }

    if (!cfg.profile_csv.empty()) {
        scene.profile = sc::load_light_profile(cfg.profile_csv);
    } else if (cfg.ramp_start && cfg.ramp_end) {
        sc::GroundLightProfile p(cfg.width);
        for (int ch = 0; ch < sc::kChannels; ++ch)
            for (int c = 0; c < cfg.width; ++c) {
                const double t = cfg.width > 1 ? static_cast<double>(c) / (cfg.width - 1) : 0.0;
                p.at(ch, c) = (*cfg.ramp_start)[ch] * (1.0 - t) + (*cfg.ramp_end)[ch] * t;
            }
        scene.profile = std::move(p);
    } else {
        sc::GroundLightProfile p(cfg.width);
        for (int ch = 0; ch < sc::kChannels; ++ch)
            for (int c = 0; c < cfg.width; ++c) p.at(ch, c) = cfg.a_const[ch];
        scene.profile = std::move(p);
    }

    const sc::SimMode mode =
        cfg.mode == "baseline" ? sc::SimMode::Baseline : sc::SimMode::Adaptive;
    const sc::RadianceImage polluted = sc::synthesize(scene, mode);

    const sc::Transfer transfer = parse_transfer(cfg.transfer, "transfer");
    if (cfg.bits != 8 && cfg.bits != 16) throw UsageError(o.config_path + ": bits must be 8 or 16");
    sc::save_image(polluted, cfg.output, transfer, cfg.bits);
    if (!cfg.base_output.empty()) sc::save_image(scene.base, cfg.base_output, transfer, cfg.bits);
    if (!cfg.profile_output.empty()) sc::save_light_profile(scene.profile, cfg.profile_output);

    double base_mean = 0.0, out_mean = 0.0;
    for (double v : scene.base.data()) base_mean += v;
    for (double v : polluted.data()) out_mean += v;
    base_mean /= static_cast<double>(scene.base.data().size());
    out_mean /= static_cast<double>(polluted.data().size());

    json summary;
    summary["params"] = {{"mode", cfg.mode},
                         {"beta", triple_json(cfg.beta)},
                         {"width", cfg.width},
                         {"height", cfg.height},
                         {"stars", cfg.stars},
                         {"seed", cfg.seed},
                         {"noise_sigma", cfg.noise_sigma}};
    summary["mean_base"] = base_mean;
    summary["mean_polluted"] = out_mean;
    summary["outputs"] = {{"image", cfg.output}};
    if (!cfg.base_output.empty()) summary["outputs"]["base"] = cfg.base_output;
    if (!cfg.profile_output.empty()) summary["outputs"]["lights_csv"] = cfg.profile_output;
    return summary;
}

}  // namespace

int main(int argc, char** argv) {
    Opts o;
    CLI::App app{"skyclear: physically based removal of artificial-light veil from night photos"};
    app.require_subcommand(1);

    auto add_io = [&](CLI::App* s, bool with_input) {
        if (with_input) s->add_option("input", o.input, "input image (.png or .pfm)")->required();
        s->add_option("-o,--output", o.output, "output path");
        s->add_option("--input-transfer", o.in_transfer, "png sample encoding: srgb|linear");
        s->add_option("--output-transfer", o.out_transfer, "png sample encoding: srgb|linear");
        s->add_option("--bits", o.bits, "png bit depth: 8|16");
        s->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        s->add_flag("--json", o.json_out, "print a JSON summary to stdout");
    };
    auto add_atmosphere = [&](CLI::App* s) {
        s->add_option("--beta", o.beta, "scattering coefficient 1/m, scalar or R,G,B");
        s->add_option("--focal", o.focal, "focal length in pixels (default: image width)");
    };
    auto add_calibration = [&](CLI::App* s) {
        s->add_option("--calib", o.calib_path, "pristine long-exposure sky image");
        s->add_option("--lights", o.lights_path, "ground-light profile CSV (skips estimation)");
        s->add_option("--mask", o.mask_path, "input skyline CSV override");
        s->add_option("--calib-mask", o.calib_mask_path, "calibration skyline CSV override");
        s->add_option("--window", o.window, "quasi-quartile width, odd pixels");
        s->add_option("--row-fractions", o.row_fractions, "sky-height fractions, e.g. 0.1,0.3,0.5");
        s->add_option("--profile-sigma", o.profile_sigma, "profile smoothing sigma, px (0 = off)");
        s->add_option("--calib-exposure", o.calib_exposure, "exposure scale applied to calibration");
    };
    auto add_depth = [&](CLI::App* s) {
        s->add_option("--depth", o.depth_path, "depth raster (.pfm meters or gray .png)");
        s->add_option("--depth-scale", o.depth_scale, "meters per depth-map unit");
    };

    CLI::App* sky = app.add_subcommand("restore-sky", "adaptive restoration of a sky image");
    add_io(sky, true);
    add_atmosphere(sky);
    add_calibration(sky);
    add_depth(sky);

    CLI::App* base = app.add_subcommand("restore-baseline", "uniform-ground-radiance restoration");
    add_io(base, true);
    add_atmosphere(base);
    base->add_option("--a-const", o.a_const, "ground radiance, scalar or R,G,B");
    base->add_option("--meters-per-unit", o.meters_per_unit, "depth-unit to meter scale");
    base->add_option("--mask", o.mask_path, "input skyline CSV override");
    add_depth(base);

    CLI::App* city = app.add_subcommand("restore-city", "below-skyline restoration with depth");
    add_io(city, true);
    add_atmosphere(city);
    add_calibration(city);
    add_depth(city);
    city->add_option("--gf-radius", o.gf_radius, "guided-filter window radius, px");
    city->add_option("--gf-eps", o.gf_eps, "guided-filter regularizer");
    city->add_option("--dump-depth", o.dump_depth_path, "write the filtered depth as .pfm");

    CLI::App* restore = app.add_subcommand("restore", "restoration with selectable mode");
    add_io(restore, true);
    add_atmosphere(restore);
    add_calibration(restore);
    add_depth(restore);
    restore->add_option("--mode", o.mode, "baseline|adaptive");
    restore->add_option("--a-const", o.a_const, "ground radiance for --mode baseline");
    restore->add_option("--meters-per-unit", o.meters_per_unit, "depth-unit to meter scale");

    CLI::App* lights = app.add_subcommand("estimate-lights", "emit the ground-light profile CSV");
    add_io(lights, true);
    add_atmosphere(lights);
    add_calibration(lights);

    CLI::App* sim = app.add_subcommand("simulate", "forward model from a key = value config");
    sim->add_option("config", o.config_path, "scene description file")->required();
    add_io(sim, false);

    CLI::App* curve = app.add_subcommand("curve", "altitude-irradiance curve CSV");
    add_io(curve, false);
    curve->add_option("--beta", o.beta, "scattering coefficient 1/m, scalar or R,G,B");
    curve->add_option("--amplitude", o.amplitude, "ground radiance, scalar or R,G,B");
    curve->add_option("--ymin", o.ymin, "lowest altitude, m");
    curve->add_option("--ymax", o.ymax, "highest altitude, m");
    curve->add_option("--n", o.samples, "sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        sc::set_thread_count(o.threads);
        const auto t0 = std::chrono::steady_clock::now();
        json summary;
        std::string name;
        if (sky->parsed()) {
            name = "restore-sky";
            summary = run_restore(o, RestoreKind::Adaptive);
        } else if (base->parsed()) {
            name = "restore-baseline";
            summary = run_restore(o, RestoreKind::Baseline);
        } else if (city->parsed()) {
            name = "restore-city";
            summary = run_restore(o, RestoreKind::City);
        } else if (restore->parsed()) {
            name = "restore";
            if (o.mode != "baseline" && o.mode != "adaptive")
                throw UsageError("--mode: expected 'baseline' or 'adaptive'");
            summary = run_restore(
                o, o.mode == "baseline" ? RestoreKind::Baseline : RestoreKind::Adaptive);
        } else if (lights->parsed()) {
            name = "estimate-lights";
            summary = run_estimate_lights(o);
        } else if (sim->parsed()) {
            name = "simulate";
            summary = run_simulate(o);
        } else {
            name = "curve";
            summary = run_curve(o);
        }
        const auto t1 = std::chrono::steady_clock::now();
        summary["schema"] = 1;
        summary["subcommand"] = name;
        summary["runtime_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        if (o.json_out) std::cout << summary.dump(2) << "\n";
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
