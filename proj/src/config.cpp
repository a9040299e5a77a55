#include "jamlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace jamlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

IniDoc IniDoc::parse(const std::string& text) {
    IniDoc doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        std::string t = trim(cut == std::string::npos ? line : line.substr(0, cut));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno), "malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno), "empty section name");
            if (std::find(doc.order_.begin(), doc.order_.end(), section) == doc.order_.end())
                doc.order_.push_back(section);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno), "empty key");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno), "key outside any section");
        auto& sec = doc.data_[section];
        if (sec.count(key))
            throw ConfigError("[" + section + "] " + key, "duplicate key");
        sec[key] = value;
        doc.key_order_[section].push_back(key);
    }
    return doc;
}

bool IniDoc::has(const std::string& sec, const std::string& key) const {
    const auto it = data_.find(sec);
    return it != data_.end() && it->second.count(key) > 0;
}

bool IniDoc::has_section(const std::string& sec) const { return data_.count(sec) > 0; }

const std::string& IniDoc::get(const std::string& sec, const std::string& key) const {
    return data_.at(sec).at(key);
}

std::string IniDoc::get_or(const std::string& sec, const std::string& key,
                           const std::string& fallback) const {
    return has(sec, key) ? get(sec, key) : fallback;
}

std::vector<std::string> IniDoc::keys(const std::string& sec) const {
    const auto it = key_order_.find(sec);
    return it == key_order_.end() ? std::vector<std::string>{} : it->second;
}

namespace {

[[noreturn]] void fail(const std::string& sec, const std::string& key,
                       const std::string& problem) {
    throw ConfigError("[" + sec + "] " + key, problem);
}

double to_double(const std::string& sec, const std::string& key, const std::string& raw) {
    try {
        size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) fail(sec, key, "not a number: '" + raw + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(sec, key, "not a number: '" + raw + "'");
    }
}

long long to_int(const std::string& sec, const std::string& key, const std::string& raw) {
    try {
        size_t pos = 0;
        const long long v = std::stoll(raw, &pos);
        if (pos != raw.size()) fail(sec, key, "not an integer: '" + raw + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(sec, key, "not an integer: '" + raw + "'");
    }
}

std::vector<double> to_list(const std::string& sec, const std::string& key,
                            const std::string& raw) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(sec, key, "empty list element");
        out.push_back(to_double(sec, key, item));
    }
    if (out.empty()) fail(sec, key, "empty list");
    return out;
}

double require_double(const IniDoc& doc, const std::string& sec, const std::string& key) {
    if (!doc.has(sec, key)) fail(sec, key, "required key missing");
    return to_double(sec, key, doc.get(sec, key));
}

long long require_int(const IniDoc& doc, const std::string& sec, const std::string& key) {
    if (!doc.has(sec, key)) fail(sec, key, "required key missing");
    return to_int(sec, key, doc.get(sec, key));
}

void check_known_keys(const IniDoc& doc, const std::string& sec,
                      const std::set<std::string>& allowed) {
    for (const auto& k : doc.keys(sec))
        if (!allowed.count(k)) fail(sec, k, "unknown key");
}

void check_known_sections(const IniDoc& doc, const std::set<std::string>& allowed) {
    for (const auto& s : doc.sections())
        if (!allowed.count(s)) throw ConfigError("[" + s + "]", "unknown section");
}

std::string axis_for(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ser_vs_sjr: return "sjr_db";
        case ExperimentKind::ser_vs_rho: return "rho";
        case ExperimentKind::pmd_vs_l: return "l";
        case ExperimentKind::pmd_vs_njr: return "njr_db";
        case ExperimentKind::pmd_theory_vs_sim: return "njr_db";
        case ExperimentKind::dft_illustration: return "";
    }
    return "";
}

} // namespace

const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ser_vs_sjr: return "ser_vs_sjr";
        case ExperimentKind::ser_vs_rho: return "ser_vs_rho";
        case ExperimentKind::pmd_vs_l: return "pmd_vs_l";
        case ExperimentKind::pmd_vs_njr: return "pmd_vs_njr";
        case ExperimentKind::pmd_theory_vs_sim: return "pmd_theory_vs_sim";
        case ExperimentKind::dft_illustration: return "dft_illustration";
    }
    return "?";
}

const char* policy_name(SymbolPolicy p) {
    switch (p) {
        case SymbolPolicy::uniform: return "uniform";
        case SymbolPolicy::fixed: return "fixed";
        case SymbolPolicy::a_min: return "a_min";
        case SymbolPolicy::a_max: return "a_max";
    }
    return "?";
}

const char* elimination_name(EliminationPolicy p) {
    switch (p) {
        case EliminationPolicy::none: return "none";
        case EliminationPolicy::peak_only: return "peak";
        case EliminationPolicy::threshold_only: return "threshold";
        case EliminationPolicy::threshold_and_peak: return "threshold_and_peak";
    }
    return "?";
}

ExperimentSpec parse_experiment(const std::string& text) {
    const IniDoc doc = IniDoc::parse(text);
    check_known_sections(doc, {"experiment", "lora", "channel", "jammer", "detector", "sweep"});

    ExperimentSpec spec;

    // [experiment]
    check_known_keys(doc, "experiment",
                     {"kind", "trials", "seed", "symbol_policy", "symbol", "theory_draws"});
    if (!doc.has("experiment", "kind")) fail("experiment", "kind", "required key missing");
    const std::string kind = doc.get("experiment", "kind");
    if (kind == "ser_vs_sjr") spec.kind = ExperimentKind::ser_vs_sjr;
    else if (kind == "ser_vs_rho") spec.kind = ExperimentKind::ser_vs_rho;
    else if (kind == "pmd_vs_l") spec.kind = ExperimentKind::pmd_vs_l;
    else if (kind == "pmd_vs_njr") spec.kind = ExperimentKind::pmd_vs_njr;
    else if (kind == "pmd_theory_vs_sim") spec.kind = ExperimentKind::pmd_theory_vs_sim;
    else if (kind == "dft_illustration") spec.kind = ExperimentKind::dft_illustration;
    else fail("experiment", "kind", "unknown kind '" + kind + "'");

    const bool simulated = spec.kind == ExperimentKind::ser_vs_sjr ||
                           spec.kind == ExperimentKind::ser_vs_rho ||
                           spec.kind == ExperimentKind::pmd_theory_vs_sim;
    if (simulated) {
        spec.trials = require_int(doc, "experiment", "trials");
        if (spec.trials < 1) fail("experiment", "trials", "must be >= 1");
    } else if (doc.has("experiment", "trials")) {
        fail("experiment", "trials", "not used by kind " + kind);
    }
    if (doc.has("experiment", "seed")) {
        const long long s = to_int("experiment", "seed", doc.get("experiment", "seed"));
        if (s < 0) fail("experiment", "seed", "must be >= 0");
        spec.seed = static_cast<std::uint64_t>(s);
    }
    if (doc.has("experiment", "theory_draws")) {
        spec.theory_draws = to_int("experiment", "theory_draws", doc.get("experiment", "theory_draws"));
        if (spec.theory_draws < 1) fail("experiment", "theory_draws", "must be >= 1");
    }

    // [lora]
    check_known_keys(doc, "lora", {"sf"});
    const long long sf = require_int(doc, "lora", "sf");
    if (sf < 7 || sf > 12) fail("lora", "sf", "must be in [7, 12]");
    spec.lora = LoRaParams::from_sf(static_cast<int>(sf));

    // [experiment] symbol policy (needs M for range checks)
    const std::string pol = doc.get_or("experiment", "symbol_policy", "uniform");
    if (pol == "uniform") spec.symbol_policy = SymbolPolicy::uniform;
    else if (pol == "fixed") spec.symbol_policy = SymbolPolicy::fixed;
    else if (pol == "a_min") spec.symbol_policy = SymbolPolicy::a_min;
    else if (pol == "a_max") spec.symbol_policy = SymbolPolicy::a_max;
    else fail("experiment", "symbol_policy", "unknown policy '" + pol + "'");
    if (doc.has("experiment", "symbol")) {
        const long long a = to_int("experiment", "symbol", doc.get("experiment", "symbol"));
        if (a < 0 || a >= spec.lora.m) fail("experiment", "symbol", "must be in [0, M-1]");
        spec.symbol_value = static_cast<int>(a);
        spec.has_symbol = true;
    }
    if (spec.symbol_policy == SymbolPolicy::fixed && !spec.has_symbol)
        fail("experiment", "symbol", "required when symbol_policy = fixed");

    // [channel]
    check_known_keys(doc, "channel", {"snr_db"});
    if (doc.has_section("channel")) {
        spec.snr_db = require_double(doc, "channel", "snr_db");
        spec.noiseless = false;
    } else if (spec.kind == ExperimentKind::dft_illustration) {
        spec.noiseless = true;
    } else {
        fail("channel", "snr_db", "required key missing");
    }

    // [jammer]
    check_known_keys(doc, "jammer",
                     {"kind", "rho", "nu_j", "v", "u", "phi", "sjr_db", "njr_db", "sigma_j_sq"});
    if (!doc.has("jammer", "kind")) fail("jammer", "kind", "required key missing");
    const std::string jkind = doc.get("jammer", "kind");
    JammerConfig& jam = spec.jammer;
    if (jkind == "band") jam.kind = JammerConfig::Kind::band;
    else if (jkind == "tone") jam.kind = JammerConfig::Kind::tone;
    else fail("jammer", "kind", "unknown kind '" + jkind + "' (band or tone)");

    if (jam.kind == JammerConfig::Kind::band) {
        for (const char* k : {"v", "u", "phi"})
            if (doc.has("jammer", k)) fail("jammer", k, "tone-only key on a band jammer");
        jam.rho = to_double("jammer", "rho", doc.get_or("jammer", "rho", "1"));
        if (!(jam.rho > 0.0 && jam.rho <= 1.0)) fail("jammer", "rho", "must be in (0, 1]");
        jam.nu_j = to_double("jammer", "nu_j", doc.get_or("jammer", "nu_j", "0"));
        if (!(jam.nu_j >= 0.0 && jam.nu_j < 1.0)) fail("jammer", "nu_j", "must be in [0, 1)");
    } else {
        for (const char* k : {"rho", "nu_j"})
            if (doc.has("jammer", k)) fail("jammer", k, "band-only key on a tone jammer");
        const long long v = doc.has("jammer", "v") ? to_int("jammer", "v", doc.get("jammer", "v")) : 1;
        if (v < 1 || v >= spec.lora.m) fail("jammer", "v", "must be in [1, M-1]");
        jam.v = static_cast<int>(v);
        const std::string u_raw = doc.get_or("jammer", "u", "random");
        if (u_raw == "random") {
            jam.random_u = true;
        } else {
            jam.u = to_list("jammer", "u", u_raw);
            if (static_cast<int>(jam.u.size()) != jam.v)
                fail("jammer", "u", "list length must equal v");
            for (double uv : jam.u)
                if (!(uv > 0.0 && uv <= spec.lora.m - 1))
                    fail("jammer", "u", "tone frequencies must be in (0, M-1]");
        }
        const std::string phi_raw = doc.get_or("jammer", "phi", "random");
        if (phi_raw == "random") {
            jam.random_phi = true;
        } else {
            jam.random_phi = false;
            jam.phi = to_list("jammer", "phi", phi_raw);
            if (static_cast<int>(jam.phi.size()) != jam.v)
                fail("jammer", "phi", "list length must equal v");
        }
    }

    // Jammer power: either the sweep axis carries it or exactly one key does.
    const bool axis_power = spec.kind == ExperimentKind::ser_vs_sjr ||
                            spec.kind == ExperimentKind::pmd_vs_njr ||
                            spec.kind == ExperimentKind::pmd_theory_vs_sim;
    int n_power = 0;
    for (const char* k : {"sjr_db", "njr_db", "sigma_j_sq"})
        if (doc.has("jammer", k)) ++n_power;
    if (axis_power) {
        if (n_power > 0)
            fail("jammer", "sjr_db", "power comes from the sweep axis for kind " + kind);
        jam.power_from_sweep = true;
    } else {
        if (n_power != 1)
            fail("jammer", "sigma_j_sq",
                 "exactly one of sjr_db, njr_db, sigma_j_sq is required for kind " + kind);
        const double sigma_sq =
            spec.noiseless ? 1.0 : ChannelSpec::sigma_sq_from_snr_db(spec.snr_db);
        if (doc.has("jammer", "sjr_db"))
            jam.sigma_j_sq = std::pow(10.0, -require_double(doc, "jammer", "sjr_db") / 10.0);
        else if (doc.has("jammer", "njr_db")) {
            if (spec.noiseless) fail("jammer", "njr_db", "needs a [channel] section");
            jam.sigma_j_sq = sigma_sq * std::pow(10.0, -require_double(doc, "jammer", "njr_db") / 10.0);
        } else {
            jam.sigma_j_sq = require_double(doc, "jammer", "sigma_j_sq");
        }
        if (!(jam.sigma_j_sq > 0.0)) fail("jammer", "sigma_j_sq", "jammer power must be > 0");
    }

    // Kind/jammer compatibility.
    if (spec.kind == ExperimentKind::ser_vs_rho && jam.kind != JammerConfig::Kind::band)
        fail("jammer", "kind", "ser_vs_rho sweeps rho and needs a band jammer");
    if (spec.kind == ExperimentKind::ser_vs_rho && doc.has("jammer", "rho"))
        fail("jammer", "rho", "swept by ser_vs_rho; remove the key");
    if (spec.kind == ExperimentKind::dft_illustration && jam.kind != JammerConfig::Kind::tone)
        fail("jammer", "kind", "dft_illustration needs a tone jammer");
    if (spec.kind == ExperimentKind::dft_illustration) {
        if (jam.random_u) fail("jammer", "u", "dft_illustration needs explicit tones");
        // A spectrum table is a single deterministic evaluation; unspecified
        // phases resolve to zero rather than a draw.
        if (jam.random_phi) {
            jam.random_phi = false;
            jam.phi.assign(jam.u.size(), 0.0);
        }
    }
    if ((spec.symbol_policy == SymbolPolicy::a_min || spec.symbol_policy == SymbolPolicy::a_max)) {
        if (jam.kind != JammerConfig::Kind::tone)
            fail("experiment", "symbol_policy", "a_min/a_max need a tone jammer");
        if (spec.kind != ExperimentKind::ser_vs_sjr)
            fail("experiment", "symbol_policy", "a_min/a_max only apply to ser_vs_sjr");
        if (!jam.random_u)
            for (double uv : jam.u)
                if (std::abs(uv - std::round(uv)) > 1e-9)
                    fail("experiment", "symbol_policy",
                         "a_min/a_max need integer tone frequencies");
    }

    // [detector]
    const bool wants_detector = spec.kind == ExperimentKind::pmd_vs_l ||
                                spec.kind == ExperimentKind::pmd_vs_njr ||
                                spec.kind == ExperimentKind::pmd_theory_vs_sim;
    check_known_keys(doc, "detector",
                     {"l", "pfa", "pfa_saa", "elimination", "noise_floor", "noise_frames"});
    if (wants_detector) {
        if (!doc.has_section("detector")) fail("detector", "l", "required section missing");
        DetectorConfig& det = spec.detector;
        if (spec.kind != ExperimentKind::pmd_vs_l) {
            const long long l = require_int(doc, "detector", "l");
            if (l < 1 || l > spec.lora.m - 1) fail("detector", "l", "must be in [1, M-1]");
            det.l = static_cast<int>(l);
        } else if (doc.has("detector", "l")) {
            fail("detector", "l", "swept by pmd_vs_l; remove the key");
        }
        det.pfa = to_double("detector", "pfa", doc.get_or("detector", "pfa", "1e-3"));
        if (!(det.pfa > 0.0 && det.pfa < 1.0)) fail("detector", "pfa", "must be in (0, 1)");
        det.pfa_saa = require_double(doc, "detector", "pfa_saa");
        if (!(det.pfa_saa > 0.0 && det.pfa_saa < 1.0))
            fail("detector", "pfa_saa", "must be in (0, 1)");
        const std::string elim = doc.get_or("detector", "elimination", "threshold_and_peak");
        if (elim == "none") det.policy = EliminationPolicy::none;
        else if (elim == "peak") det.policy = EliminationPolicy::peak_only;
        else if (elim == "threshold") det.policy = EliminationPolicy::threshold_only;
        else if (elim == "threshold_and_peak") det.policy = EliminationPolicy::threshold_and_peak;
        else fail("detector", "elimination", "unknown policy '" + elim + "'");
        const std::string nf = doc.get_or("detector", "noise_floor", "known");
        if (nf == "known") {
            spec.noise_known = true;
        } else if (nf == "estimated") {
            spec.noise_known = false;
            const long long frames = require_int(doc, "detector", "noise_frames");
            if (frames < 1) fail("detector", "noise_frames", "must be >= 1");
            spec.noise_est_frames = static_cast<int>(frames);
        } else {
            fail("detector", "noise_floor", "must be 'known' or 'estimated'");
        }
    } else if (doc.has_section("detector")) {
        fail("detector", "l", "section not used by kind " + kind);
    }

    // [sweep]
    const std::string axis = axis_for(spec.kind);
    check_known_keys(doc, "sweep", {"axis", "values"});
    if (axis.empty()) {
        if (doc.has_section("sweep")) fail("sweep", "values", "kind " + kind + " has no sweep");
    } else {
        if (!doc.has_section("sweep")) fail("sweep", "values", "required section missing");
        if (doc.has("sweep", "axis") && doc.get("sweep", "axis") != axis)
            fail("sweep", "axis", "kind " + kind + " sweeps " + axis);
        spec.sweep_axis = axis;
        if (!doc.has("sweep", "values")) fail("sweep", "values", "required key missing");
        spec.sweep_values = to_list("sweep", "values", doc.get("sweep", "values"));
        for (double v : spec.sweep_values) {
            if (axis == "rho" && !(v > 0.0 && v <= 1.0))
                fail("sweep", "values", "rho values must be in (0, 1]");
            if (axis == "l" &&
                (v != std::floor(v) || v < 1 || v > spec.lora.m - 1))
                fail("sweep", "values", "l values must be integers in [1, M-1]");
        }
    }

    // dft_illustration needs explicit tones already checked; symbol optional.
    return spec;
}

ExperimentSpec parse_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment(buf.str());
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out;
}

} // namespace

std::string dump_experiment(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "kind = " << kind_name(spec.kind) << "\n";
    out << "seed = " << spec.seed << "\n";
    if (spec.trials > 0) out << "trials = " << spec.trials << "\n";
    out << "symbol_policy = " << policy_name(spec.symbol_policy) << "\n";
    if (spec.has_symbol) out << "symbol = " << spec.symbol_value << "\n";
    if (spec.kind == ExperimentKind::pmd_vs_l || spec.kind == ExperimentKind::pmd_vs_njr ||
        spec.kind == ExperimentKind::pmd_theory_vs_sim)
        out << "theory_draws = " << spec.theory_draws << "\n";
    out << "\n[lora]\nsf = " << spec.lora.sf << "\n";
    if (!spec.noiseless) out << "\n[channel]\nsnr_db = " << fmt(spec.snr_db) << "\n";
    out << "\n[jammer]\n";
    if (spec.jammer.kind == JammerConfig::Kind::band) {
        out << "kind = band\n";
        out << "rho = " << fmt(spec.jammer.rho) << "\n";
        out << "nu_j = " << fmt(spec.jammer.nu_j) << "\n";
    } else {
        out << "kind = tone\n";
        out << "v = " << spec.jammer.v << "\n";
        out << "u = " << (spec.jammer.random_u ? "random" : fmt_list(spec.jammer.u)) << "\n";
        out << "phi = " << (spec.jammer.random_phi ? "random" : fmt_list(spec.jammer.phi)) << "\n";
    }
    if (!spec.jammer.power_from_sweep)
        out << "sigma_j_sq = " << fmt(spec.jammer.sigma_j_sq) << "\n";
    if (spec.kind == ExperimentKind::pmd_vs_l || spec.kind == ExperimentKind::pmd_vs_njr ||
        spec.kind == ExperimentKind::pmd_theory_vs_sim) {
        out << "\n[detector]\n";
        if (spec.kind != ExperimentKind::pmd_vs_l) out << "l = " << spec.detector.l << "\n";
        out << "pfa = " << fmt(spec.detector.pfa) << "\n";
        out << "pfa_saa = " << fmt(spec.detector.pfa_saa) << "\n";
        out << "elimination = " << elimination_name(spec.detector.policy) << "\n";
        out << "noise_floor = " << (spec.noise_known ? "known" : "estimated") << "\n";
        if (!spec.noise_known) out << "noise_frames = " << spec.noise_est_frames << "\n";
    }
    if (!spec.sweep_axis.empty()) {
        out << "\n[sweep]\n";
        out << "axis = " << spec.sweep_axis << "\n";
        out << "values = " << fmt_list(spec.sweep_values) << "\n";
    }
    return out.str();
}

} // namespace jamlab
