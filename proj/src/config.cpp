#include "softbell/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

namespace {

const std::set<std::string> kLogLevels{"trace", "debug", "info", "warn", "error", "off"};
const std::set<std::string> kSweepParameters{"alpha", "kappa_par", "kappa_rad", "E_min", "solid_angle", "smear_sigma"};

// Typed access to a KeyValueConfig that reports errors by key and line and
// remembers which keys were consumed.
class Reader {
public:
    explicit Reader(const KeyValueConfig& kv) : kv_(kv) {}

    int line_of(const std::string& key) const {
        const auto* e = kv_.find(key);
        return e ? e->line : 0;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& why) const {
        throw ConfigError(key, line_of(key), why);
    }

    const std::string* raw(const std::string& key) {
        used_.insert(key);
        const auto* e = kv_.find(key);
        return e ? &e->value : nullptr;
    }

    void number(const std::string& key, double& out) {
        if (const auto* v = raw(key)) {
            const auto parsed = text::parse_double(*v);
            if (!parsed) fail(key, "expected a number, got '" + *v + "'");
            out = *parsed;
        }
    }

    template <typename Int>
    void integer(const std::string& key, Int& out) {
        if (const auto* v = raw(key)) {
            const auto parsed = text::parse_integer(*v);
            if (!parsed) fail(key, "expected an integer, got '" + *v + "'");
            if (*parsed < 0 && std::is_unsigned_v<Int>) fail(key, "must be non-negative");
            out = static_cast<Int>(*parsed);
        }
    }

    void unsigned64(const std::string& key, std::uint64_t& out) {
        if (const auto* v = raw(key)) {
            const std::string t(text::trim(*v));
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
                fail(key, "expected a non-negative integer, got '" + *v + "'");
            }
            try {
                out = std::stoull(t);
            } catch (const std::exception&) {
                fail(key, "integer out of range");
            }
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const auto* v = raw(key)) {
            const auto t = text::trim(*v);
            if (t == "true" || t == "yes" || t == "1") out = true;
            else if (t == "false" || t == "no" || t == "0") out = false;
            else fail(key, "expected true or false, got '" + *v + "'");
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const auto* v = raw(key)) out = std::string(text::trim(*v));
    }

    void directions(const std::string& key, std::vector<Direction>& out) {
        if (const auto* v = raw(key)) {
            out.clear();
            for (const auto& item : text::split(*v, ';')) {
                if (item.empty()) continue;
                try {
                    out.push_back(parse_direction(item));
                } catch (const std::exception& err) {
                    fail(key, err.what());
                }
            }
        }
    }

    void reject_unknown() const {
        for (const auto& [key, entry] : kv_.entries()) {
            if (key.starts_with("sweep.")) continue;
            if (!used_.contains(key)) throw ConfigError(key, entry.line, "unknown key");
        }
    }

private:
    const KeyValueConfig& kv_;
    std::set<std::string> used_;
};

bool is_none(std::string_view v) {
    v = text::trim(v);
    return v.empty() || v == "none";
}

int parse_setting_ref(const std::string& item, char side, const std::function<void(const std::string&)>& fail) {
    const auto t = text::trim(item);
    if (t.size() < 2 || t.front() != side) fail("expected a reference like " + std::string(1, side) + "0, got '" + item + "'");
    const auto idx = text::parse_integer(t.substr(1));
    if (!idx || *idx < 0) fail("bad setting index in '" + item + "'");
    return static_cast<int>(*idx);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig kv;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        const auto body = text::trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", number, "expected 'key = value'");
        const std::string key(text::trim(body.substr(0, eq)));
        if (key.empty()) throw ConfigError("", number, "missing key before '='");
        kv.set(key, std::string(text::trim(body.substr(eq + 1))), number);
    }
    return kv;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void KeyValueConfig::set(const std::string& key, std::string value, int line) {
    entries_[key] = Entry{std::move(value), line};
}

void KeyValueConfig::overlay(const KeyValueConfig& other) {
    for (const auto& [key, entry] : other.entries_) entries_[key] = entry;
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void RunConfig::validate() const {
    try {
        generator.validate();
        cut.validate();
    } catch (const ParameterError& err) {
        const std::string what = err.what();
        throw ConfigError(err.field(), 0, what.substr(err.field().size() + 2));
    }
    const auto check = [](int idx, std::size_t n, const char* field) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
            throw ConfigError(field, 0, "setting index " + std::to_string(idx) + " is not in the generator settings");
        }
    };
    for (const auto& [ia, ib] : analyses.correlations) {
        check(ia, generator.settings_A.size(), "analysis.correlations");
        check(ib, generator.settings_B.size(), "analysis.correlations");
    }
    for (const auto& q : analyses.chsh) {
        check(q[0], generator.settings_A.size(), "analysis.chsh");
        check(q[1], generator.settings_A.size(), "analysis.chsh");
        check(q[2], generator.settings_B.size(), "analysis.chsh");
        check(q[3], generator.settings_B.size(), "analysis.chsh");
    }
    if (output.events.empty()) throw ConfigError("output.events", 0, "must not be empty");
    if (output.summary.empty()) throw ConfigError("output.summary", 0, "must not be empty");
    if (!kLogLevels.contains(log_level)) throw ConfigError("log.level", 0, "unknown level '" + log_level + "'");
}

AnalysisPlan RunConfig::analysis_plan() const {
    AnalysisPlan plan;
    plan.cut = cut;
    const auto& A = generator.settings_A;
    const auto& B = generator.settings_B;
    for (const auto& [ia, ib] : analyses.correlations) plan.correlations.push_back({A.at(ia), B.at(ib)});
    for (const auto& q : analyses.chsh) plan.chsh.push_back({A.at(q[0]), A.at(q[1]), B.at(q[2]), B.at(q[3])});
    plan.violations = analyses.violations;
    return plan;
}

RunConfig run_config_from(const KeyValueConfig& kv) {
    Reader r(kv);
    RunConfig c;
    auto& g = c.generator;
    auto& em = g.emission;

    r.unsigned64("generator.seed", g.seed);
    r.unsigned64("generator.n_events", g.n_events);
    r.number("generator.smear_sigma", g.smear_sigma);
    r.integer("generator.max_retries", g.max_retries);
    r.directions("generator.settings_A", g.settings_A);
    r.directions("generator.settings_B", g.settings_B);

    r.number("emission.alpha", em.alpha);
    r.number("emission.E_total", em.E_total);
    r.number("emission.E_A", em.E_A);
    r.number("emission.m_B", em.m_B);
    r.number("emission.E_min", em.E_min);
    r.number("emission.kappa_rad", em.kappa_rad);
    r.number("emission.kappa_par", em.kappa_par);
    r.integer("emission.k_max", em.k_max);

    r.number("cut.solid_angle", c.cut.solid_angle);
    if (const auto* v = r.raw("cut.energy_window"); v && !is_none(*v)) {
        const auto parts = text::split(*v, ',');
        const auto lo = parts.size() == 2 ? text::parse_double(parts[0]) : std::nullopt;
        const auto hi = parts.size() == 2 ? text::parse_double(parts[1]) : std::nullopt;
        if (!lo || !hi) r.fail("cut.energy_window", "expected 'lo, hi' or 'none'");
        c.cut.energy_window = std::make_pair(*lo, *hi);
    }

    if (const auto* v = r.raw("analysis.correlations"); v && !is_none(*v)) {
        const auto fail = [&](const std::string& why) { r.fail("analysis.correlations", why); };
        for (const auto& item : text::split(*v, ';')) {
            if (item.empty()) continue;
            const auto parts = text::split(item, ':');
            if (parts.size() != 2) fail("expected 'A<i>:B<j>', got '" + item + "'");
            c.analyses.correlations.emplace_back(parse_setting_ref(parts[0], 'A', fail),
                                                 parse_setting_ref(parts[1], 'B', fail));
        }
    }
    if (const auto* v = r.raw("analysis.chsh"); v && !is_none(*v)) {
        const auto fail = [&](const std::string& why) { r.fail("analysis.chsh", why); };
        for (const auto& item : text::split(*v, ';')) {
            if (item.empty()) continue;
            const auto parts = text::split(item, ',');
            if (parts.size() != 4) fail("expected 'A<i>,A<j>,B<k>,B<l>', got '" + item + "'");
            c.analyses.chsh.push_back({parse_setting_ref(parts[0], 'A', fail), parse_setting_ref(parts[1], 'A', fail),
                                       parse_setting_ref(parts[2], 'B', fail), parse_setting_ref(parts[3], 'B', fail)});
        }
    }
    r.boolean("analysis.violations", c.analyses.violations);

    r.string("output.dir", c.output.dir);
    r.string("output.events", c.output.events);
    r.string("output.summary", c.output.summary);
    r.string("log.level", c.log_level);

    r.reject_unknown();
    try {
        c.validate();
    } catch (const ConfigError& err) {
        // Attach the source line of the offending key.
        if (err.line() == 0 && r.line_of(err.field()) > 0) {
            std::string what = err.what();
            const auto colon = what.find(": ");
            throw ConfigError(err.field(), r.line_of(err.field()),
                              colon == std::string::npos ? what : what.substr(colon + 2));
        }
        throw;
    }
    return c;
}

RunConfig parse_run_config(const std::string& text) {
    return run_config_from(KeyValueConfig::parse(text));
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return run_config_from(KeyValueConfig::load(path));
}

std::string serialize_run_config(const RunConfig& c) {
    using text::format_double;
    const auto& g = c.generator;
    const auto& em = g.emission;
    const auto dirs = [](const std::vector<Direction>& ds) {
        std::vector<std::string> parts;
        for (const auto& d : ds) parts.push_back(format_direction(d));
        return join(parts, "; ");
    };

    std::ostringstream out;
    out << "generator.seed = " << g.seed << '\n'
        << "generator.n_events = " << g.n_events << '\n'
        << "generator.smear_sigma = " << format_double(g.smear_sigma) << '\n'
        << "generator.max_retries = " << g.max_retries << '\n'
        << "generator.settings_A = " << dirs(g.settings_A) << '\n'
        << "generator.settings_B = " << dirs(g.settings_B) << '\n'
        << "emission.alpha = " << format_double(em.alpha) << '\n'
        << "emission.E_total = " << format_double(em.E_total) << '\n'
        << "emission.E_A = " << format_double(em.E_A) << '\n'
        << "emission.m_B = " << format_double(em.m_B) << '\n'
        << "emission.E_min = " << format_double(em.E_min) << '\n'
        << "emission.kappa_rad = " << format_double(em.kappa_rad) << '\n'
        << "emission.kappa_par = " << format_double(em.kappa_par) << '\n'
        << "emission.k_max = " << em.k_max << '\n'
        << "cut.solid_angle = " << format_double(c.cut.solid_angle) << '\n'
        << "cut.energy_window = "
        << (c.cut.energy_window
                ? format_double(c.cut.energy_window->first) + ", " + format_double(c.cut.energy_window->second)
                : std::string("none"))
        << '\n';

    std::vector<std::string> corr;
    for (const auto& [ia, ib] : c.analyses.correlations) corr.push_back("A" + std::to_string(ia) + ":B" + std::to_string(ib));
    std::vector<std::string> chsh;
    for (const auto& q : c.analyses.chsh) {
        chsh.push_back("A" + std::to_string(q[0]) + ",A" + std::to_string(q[1]) + ",B" + std::to_string(q[2]) + ",B" +
                       std::to_string(q[3]));
    }
    out << "analysis.correlations = " << (corr.empty() ? "none" : join(corr, "; ")) << '\n'
        << "analysis.chsh = " << (chsh.empty() ? "none" : join(chsh, "; ")) << '\n'
        << "analysis.violations = " << (c.analyses.violations ? "true" : "false") << '\n'
        << "output.dir = " << c.output.dir << '\n'
        << "output.events = " << c.output.events << '\n'
        << "output.summary = " << c.output.summary << '\n'
        << "log.level = " << c.log_level << '\n';
    return out.str();
}

void SweepSpec::validate() const {
    if (!kSweepParameters.contains(parameter)) throw ConfigError("sweep.parameter", 0, "unknown parameter '" + parameter + "'");
    if (values.empty()) throw ConfigError("sweep.values", 0, "grid is empty");
    if (values.size() > 1) {
        const bool up = values[1] > values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
                throw ConfigError("sweep.values", 0, "grid must be strictly monotone");
            }
        }
    }
}

SweepSpec sweep_spec_from(const KeyValueConfig& kv) {
    SweepSpec spec;
    const auto line = [&](const std::string& key) {
        const auto* e = kv.find(key);
        return e ? e->line : 0;
    };
    if (const auto* e = kv.find("sweep.parameter")) spec.parameter = std::string(text::trim(e->value));
    else throw ConfigError("sweep.parameter", 0, "missing");
    if (const auto* e = kv.find("sweep.values")) {
        for (const auto& item : text::split(e->value, ',')) {
            const auto v = text::parse_double(item);
            if (!v) throw ConfigError("sweep.values", e->line, "expected a number, got '" + item + "'");
            spec.values.push_back(*v);
        }
    } else {
        throw ConfigError("sweep.values", 0, "missing");
    }
    if (const auto* e = kv.find("sweep.n_events")) {
        const auto v = text::parse_integer(e->value);
        if (!v || *v < 0) throw ConfigError("sweep.n_events", e->line, "expected a non-negative integer");
        spec.n_events = static_cast<std::uint64_t>(*v);
    }
    for (const auto& [key, entry] : kv.entries()) {
        if (key.starts_with("sweep.") && key != "sweep.parameter" && key != "sweep.values" && key != "sweep.n_events") {
            throw ConfigError(key, entry.line, "unknown key");
        }
    }
    try {
        spec.validate();
    } catch (const ConfigError& err) {
        std::string what = err.what();
        throw ConfigError(err.field(), line(err.field()), what.substr(what.find(": ") + 2));
    }
    return spec;
}

RunConfig apply_sweep_point(const RunConfig& base, const SweepSpec& spec, double value) {
    RunConfig c = base;
    if (spec.n_events > 0) c.generator.n_events = spec.n_events;
    auto& em = c.generator.emission;
    if (spec.parameter == "alpha") em.alpha = value;
    else if (spec.parameter == "kappa_par") em.kappa_par = value;
    else if (spec.parameter == "kappa_rad") em.kappa_rad = value;
    else if (spec.parameter == "E_min") em.E_min = value;
    else if (spec.parameter == "solid_angle") c.cut.solid_angle = value;
    else if (spec.parameter == "smear_sigma") c.generator.smear_sigma = value;
    else throw ConfigError("sweep.parameter", 0, "unknown parameter '" + spec.parameter + "'");
    return c;
}

}  // namespace softbell
