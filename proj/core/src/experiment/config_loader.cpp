#include "ghzmux/experiment/config_loader.hpp"

#include <cctype>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string_view>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "ghzmux/photon/interface.hpp"

namespace ghzmux::experiment
{

namespace
{

using nlohmann::json;

class Reader
{
public:
    Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& where, const std::string& what) const
    {
        throw ConfigError(source_ + ": " + (where.empty() ? "/" : where) + ": " + what);
    }

    void only_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) const
    {
        if (!obj.is_object())
            fail(where, "expected an object");
        for (const auto& [key, _] : obj.items()) {
            bool known = false;
            for (auto a : allowed)
                known = known || key == a;
            if (!known)
                fail(where + "/" + key, "unknown key '" + key + "'");
        }
    }

    void number(const json& obj, const std::string& where, const char* key, double& out) const
    {
        if (!obj.contains(key))
            return;
        const json& v = obj.at(key);
        if (!v.is_number())
            fail(where + "/" + key, "expected a number");
        out = v.get<double>();
    }

    void integer(const json& obj, const std::string& where, const char* key, int& out) const
    {
        if (!obj.contains(key))
            return;
        const json& v = obj.at(key);
        if (!v.is_number_integer())
            fail(where + "/" + key, "expected an integer");
        out = v.get<int>();
    }

    template <class Unsigned>
    void count(const json& obj, const std::string& where, const char* key, Unsigned& out) const
    {
        if (!obj.contains(key))
            return;
        const json& v = obj.at(key);
        if (!v.is_number_unsigned())
            fail(where + "/" + key, "expected a non-negative integer");
        out = v.get<Unsigned>();
    }

    void boolean(const json& obj, const std::string& where, const char* key, bool& out) const
    {
        if (!obj.contains(key))
            return;
        const json& v = obj.at(key);
        if (!v.is_boolean())
            fail(where + "/" + key, "expected true or false");
        out = v.get<bool>();
    }

    std::optional<std::string> text(const json& obj, const std::string& where, const char* key) const
    {
        if (!obj.contains(key))
            return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_string())
            fail(where + "/" + key, "expected a string");
        return v.get<std::string>();
    }

    void cavity(const json& obj, const std::string& where, photon::CavityParams& c) const
    {
        only_keys(obj, where, {"kappa_ratio", "C0", "C1", "C", "delta_c", "delta_0", "delta_1"});
        if (obj.contains("C") && (obj.contains("C0") || obj.contains("C1")))
            fail(where + "/C", "'C' sets both C0 and C1 and cannot be combined with them");
        if (obj.contains("C")) {
            number(obj, where, "C", c.C0);
            c.C1 = c.C0;
        }
        number(obj, where, "kappa_ratio", c.kappa_ratio);
        number(obj, where, "C0", c.C0);
        number(obj, where, "C1", c.C1);
        number(obj, where, "delta_c", c.delta_c);
        number(obj, where, "delta_0", c.delta_0);
        number(obj, where, "delta_1", c.delta_1);
    }

    Scenario scenario(const json& obj, const std::string& where, std::size_t index) const
    {
        only_keys(obj, where,
                  {"name", "preset", "M", "N", "L0_km", "alpha_per_km", "c_m_per_s", "trials", "seed", "schedule",
                   "eta0", "unit_reflection", "cavity", "unit_cavities", "decoherence", "device", "qudit_noise"});

        Scenario s;
        auto&    c = s.config;
        integer(obj, where, "M", c.M);
        integer(obj, where, "N", c.N);
        if (c.M < 1 || c.M > 8)
            throw ValidationError(source_ + ": " + where + "/M: M must lie in [1, 8]");

        if (auto p = text(obj, where, "preset")) {
            try {
                s.preset = parse_preset(*p);
            } catch (const std::invalid_argument& e) {
                fail(where + "/preset", e.what());
            }
        }
        const bool preset_owns_devices = s.preset != Preset::custom;
        const bool preset_owns_cavity  = s.preset == Preset::worst_case;

        number(obj, where, "L0_km", c.L0_km);
        number(obj, where, "alpha_per_km", c.alpha_per_km);
        number(obj, where, "c_m_per_s", c.c_m_per_s);
        count(obj, where, "seed", c.seed);
        bool unit = false;
        boolean(obj, where, "unit_reflection", unit);
        if (unit)
            c.fixed_reflection = protocol::kUnitReflection;
        if (auto p = text(obj, where, "schedule")) {
            try {
                c.schedule = protocol::parse_schedule_policy(*p);
            } catch (const std::invalid_argument& e) {
                fail(where + "/schedule", e.what());
            }
        }
        if (obj.contains("eta0")) {
            const json& v = obj.at("eta0");
            if (v.is_number())
                c.eta0 = v.get<double>();
            else if (v == "headline")
                c.eta0 = protocol::kHeadlineEta0;
            else if (v == "cavity")
                s.eta0_from_cavity = true;
            else
                fail(where + "/eta0", "expected a number, \"headline\" or \"cavity\"");
        }

        if (obj.contains("cavity")) {
            const json& cav = obj.at("cavity");
            if (preset_owns_cavity)
                for (const char* k : {"C", "C0", "C1", "delta_0", "delta_1"})
                    if (cav.is_object() && cav.contains(k))
                        fail(where + "/cavity/" + k, "fixed by preset 'worst-case'");
            cavity(cav, where + "/cavity", c.cavity);
        }
        if (obj.contains("unit_cavities")) {
            if (preset_owns_cavity)
                fail(where + "/unit_cavities", "fixed by preset 'worst-case'");
            const json& arr = obj.at("unit_cavities");
            if (!arr.is_array())
                fail(where + "/unit_cavities", "expected an array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                photon::CavityParams u = c.cavity;
                cavity(arr[i], where + "/unit_cavities/" + std::to_string(i), u);
                c.unit_cavities.push_back(u);
            }
        }
        if (obj.contains("decoherence")) {
            const json&       dec = obj.at("decoherence");
            const std::string w   = where + "/decoherence";
            only_keys(dec, w, {"T1", "T2"});
            number(dec, w, "T1", c.decoherence.T1_s);
            number(dec, w, "T2", c.decoherence.T2_s);
        }

        apply_preset(c, s.preset);

        if (obj.contains("device")) {
            if (preset_owns_devices)
                fail(where + "/device", "fixed by preset '" + std::string(to_string(s.preset)) + "'");
            const json&       dev = obj.at("device");
            const std::string w   = where + "/device";
            only_keys(dev, w, {"eta_os", "e_os", "eta_l", "x"});
            number(dev, w, "eta_os", c.device.eta_os);
            number(dev, w, "e_os", c.device.e_os);
            number(dev, w, "eta_l", c.device.eta_l);
            number(dev, w, "x", c.device.x);
        }
        if (obj.contains("qudit_noise")) {
            if (preset_owns_devices)
                fail(where + "/qudit_noise", "fixed by preset '" + std::string(to_string(s.preset)) + "'");
            const json&       q = obj.at("qudit_noise");
            const std::string w = where + "/qudit_noise";
            only_keys(q, w, {"sigma", "sigma_a", "sigma_p"});
            if (q.contains("sigma")) {
                number(q, w, "sigma", c.qudit_noise.sigma_a);
                c.qudit_noise.sigma_p = c.qudit_noise.sigma_a;
            }
            number(q, w, "sigma_a", c.qudit_noise.sigma_a);
            number(q, w, "sigma_p", c.qudit_noise.sigma_p);
            if (c.qudit_noise.enabled() && !obj.contains("trials") && c.trials < 2)
                c.trials = kDefaultTrials;
        }
        count(obj, where, "trials", c.trials);

        if (auto n = text(obj, where, "name"))
            s.name = *n;
        else
            s.name = "M" + std::to_string(c.M) + "N" + std::to_string(c.N) + "-" + std::string(to_string(s.preset))
                   + (index ? "-" + std::to_string(index) : "");
        if (s.name.empty())
            fail(where + "/name", "must not be empty");
        for (char ch : s.name)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.'))
                fail(where + "/name", "may only contain letters, digits, '-', '_' and '.'");

        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw ValidationError(source_ + ": " + where + ": " + e.what());
        }
        return s;
    }

private:
    std::string source_;
};

}  // namespace

LoadedConfig
parse_config(const std::string& text, const std::string& source)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": parse error: " + e.what());
    }

    const Reader reader(source);
    LoadedConfig out;
    if (root.is_object() && root.contains("scenarios")) {
        reader.only_keys(root, "", {"scenarios", "grid"});
        out.grid         = reader.text(root, "", "grid");
        const json& list = root.at("scenarios");
        if (!list.is_array() || list.empty())
            reader.fail("/scenarios", "expected a non-empty array");
        for (std::size_t i = 0; i < list.size(); ++i)
            out.scenarios.push_back(reader.scenario(list[i], "/scenarios/" + std::to_string(i), i));
    } else {
        out.scenarios.push_back(reader.scenario(root, "", 0));
    }

    std::set<std::string> names;
    for (std::size_t i = 0; i < out.scenarios.size(); ++i)
        if (!names.insert(out.scenarios[i].name).second)
            reader.fail("/scenarios/" + std::to_string(i) + "/name",
                        "duplicate scenario name '" + out.scenarios[i].name + "'");
    return out;
}

LoadedConfig
load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string() + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

}  // namespace ghzmux::experiment
