#include "scenario.hpp"

#include <set>

namespace cartan::cli {

const SystemSpec* Scenario::find(const std::string& label) const {
  for (const auto& s : systems) {
    if (s.label == label) return &s;
  }
  return nullptr;
}

namespace {

const json& require(const Document& doc, const json& obj,
                    const std::string& pointer, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    doc.fail(pointer, std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

std::string string_field(const Document& doc, const json& obj,
                         const std::string& pointer, const char* key) {
  const json& v = require(doc, obj, pointer, key);
  if (!v.is_string()) doc.fail(pointer + "/" + key, "expected a string");
  return v.get<std::string>();
}

int branch_field(const Document& doc, const json& obj,
                 const std::string& pointer, const char* key) {
  const json& v = require(doc, obj, pointer, key);
  if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
    doc.fail(pointer + "/" + key, "expected branch index 0 or 1");
  }
  return v.get<int>();
}

std::uint64_t seed_field(const Document& doc, const json& v,
                         const std::string& pointer) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    doc.fail(pointer, "expected a non-negative integer seed");
  }
  return v.get<std::uint64_t>();
}

// Runs `f`, converting library errors into line-anchored input errors.
template <typename F>
auto anchored(const Document& doc, const std::string& pointer, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    doc.fail(pointer, std::string(to_string(e.code())) + ": " + e.what());
  }
}

SystemSpec parse_system(const Document& doc, const json& v,
                        const std::string& p, double tol) {
  if (!v.is_object()) doc.fail(p, "expected a system object");
  const std::string label = string_field(doc, v, p, "label");
  const std::string sector_name = string_field(doc, v, p, "sector");
  Sector sector;
  if (sector_name == "plus") {
    sector = Sector::Plus;
  } else if (sector_name == "minus") {
    sector = Sector::Minus;
  } else {
    doc.fail(p + "/sector", "sector must be \"plus\" or \"minus\"");
  }
  const json& st = require(doc, v, p, "state");
  if (!st.is_array() || st.size() != 2) {
    doc.fail(p + "/state", "state must hold two complex amplitudes");
  }
  const Bra2 amps(complex_from(doc, st[0], p + "/state/0"),
                  complex_from(doc, st[1], p + "/state/1"));
  State state = anchored(doc, p + "/state",
                         [&] { return make_state(amps, sector, label, tol); });

  std::optional<Observable> obs;
  if (v.contains("spectrum")) {
    const json& sp = v.at("spectrum");
    if (!sp.is_array() || sp.size() != 2 || !sp[0].is_number() ||
        !sp[1].is_number()) {
      doc.fail(p + "/spectrum", "spectrum must be two real numbers");
    }
    obs = anchored(doc, p + "/spectrum", [&] {
      return Observable(sector, sp[0].get<double>(), sp[1].get<double>(), tol);
    });
  }
  return {label, state, obs};
}

const SystemSpec& lookup(const Document& doc, const Scenario& sc,
                         const std::string& label, const std::string& pointer) {
  const SystemSpec* s = sc.find(label);
  if (s == nullptr) doc.fail(pointer, "unknown system \"" + label + "\"");
  return *s;
}

DeviceSpec parse_device(const Document& doc, const Scenario& sc, const json& v,
                        const std::string& p) {
  if (!v.is_object()) doc.fail(p, "expected a device object");
  const std::string family = string_field(doc, v, p, "family");
  if (family == "pi") {
    const std::string sys = string_field(doc, v, p, "system");
    const SystemSpec& s = lookup(doc, sc, sys, p + "/system");
    const int mu = branch_field(doc, v, p, "branch");
    return {DeviceFamily::PiSmall, sys, {}, {}, mu, 0, 1,
            pi_device(s.state.sector(), mu)};
  }
  if (family == "big_pi") {
    const std::string sys = string_field(doc, v, p, "system");
    const SystemSpec& s = lookup(doc, sc, sys, p + "/system");
    const int mu = branch_field(doc, v, p, "branch");
    return {DeviceFamily::PiBig, sys, {}, {}, mu, 0, 1, big_pi(s.state, mu)};
  }
  if (family == "exchange") {
    const std::string sys = string_field(doc, v, p, "system");
    const SystemSpec& s = lookup(doc, sc, sys, p + "/system");
    const int from = branch_field(doc, v, p, "from");
    const int to = branch_field(doc, v, p, "to");
    if (from == to) doc.fail(p + "/to", "exchange branches must differ");
    MeasurementDevice d = anchored(doc, p, [&] {
      return exchange_device(s.state, from, to, sc.tol);
    });
    return {DeviceFamily::Exchange, sys, {}, {}, 0, from, to, d};
  }
  if (family == "m") {
    const std::string in = string_field(doc, v, p, "in");
    const std::string out = string_field(doc, v, p, "out");
    const SystemSpec& a = lookup(doc, sc, in, p + "/in");
    const SystemSpec& c = lookup(doc, sc, out, p + "/out");
    const int mu = branch_field(doc, v, p, "branch");
    MeasurementDevice d =
        anchored(doc, p, [&] { return m_device(a.state, c.state, mu); });
    return {DeviceFamily::MCreate, {}, in, out, mu, 0, 1, d};
  }
  doc.fail(p + "/family",
           "unknown device family \"" + family +
               "\" (expected pi, exchange, big_pi or m)");
}

FrameSpec parse_frame(const Document& doc, const json& v, const std::string& p,
                      const Scenario& sc) {
  if (!v.is_object()) doc.fail(p, "expected a frame object");
  FrameSpec f;
  f.kind = string_field(doc, v, p, "kind");
  f.echo = v;
  if (f.kind == "identity") {
    f.transform = FrameTransform::identity();
    return f;
  }
  if (f.kind == "dyn") {
    const Mat2 beta = mat2_from(doc, require(doc, v, p, "beta"), p + "/beta");
    const SU2Element b =
        anchored(doc, p + "/beta", [&] { return SU2Element(beta, sc.tol); });
    if (v.contains("w")) {
      const Mat2 w = mat2_from(doc, v.at("w"), p + "/w");
      const TranslationMatrix tw =
          anchored(doc, p + "/w", [&] { return TranslationMatrix(w, sc.tol); });
      f.element = anchored(doc, p + "/w", [&] { return dyn_matrix(b, tw, sc.tol); });
    } else {
      f.element = anchored(doc, p, [&] { return dyn_matrix(b); });
    }
  } else if (f.kind == "poincare") {
    const Mat2 a = mat2_from(doc, require(doc, v, p, "a"), p + "/a");
    const SL2CElement sa =
        anchored(doc, p + "/a", [&] { return SL2CElement(a, sc.tol); });
    TranslationMatrix tw = TranslationMatrix::zero();
    if (v.contains("w")) {
      const Mat2 w = mat2_from(doc, v.at("w"), p + "/w");
      tw = anchored(doc, p + "/w", [&] { return TranslationMatrix(w, sc.tol); });
    }
    f.element = anchored(doc, p, [&] { return poincare_matrix(sa, tw); });
  } else if (f.kind == "random") {
    std::uint64_t seed = sc.seed;
    if (v.contains("seed")) seed = seed_field(doc, v.at("seed"), p + "/seed");
    Rng rng(seed);
    f.element = random_dyn(rng);
  } else {
    doc.fail(p + "/kind", "unknown frame kind \"" + f.kind +
                              "\" (expected dyn, poincare, random or identity)");
  }
  try {
    f.transform = FrameTransform::from_group(*f.element, f.kind, sc.tol);
  } catch (const Error& e) {
    f.note = std::string("not in the dynamical intersection: ") + e.what();
  }
  return f;
}

}  // namespace

Scenario parse_scenario(const Document& doc, std::optional<double> tol_override) {
  const json& root = doc.value;
  if (!root.is_object()) doc.fail("", "scenario must be a JSON object");
  Scenario sc;
  if (root.contains("seed")) sc.seed = seed_field(doc, root.at("seed"), "/seed");
  if (root.contains("tol")) {
    const json& t = root.at("tol");
    if (!t.is_number() || !(t.get<double>() > 0)) {
      doc.fail("/tol", "tol must be a positive number");
    }
    sc.tol = t.get<double>();
  }
  if (tol_override) sc.tol = *tol_override;

  const json& systems = require(doc, root, "", "systems");
  if (!systems.is_array() || systems.empty()) {
    doc.fail("/systems", "systems must be a non-empty array");
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const std::string p = "/systems/" + std::to_string(i);
    SystemSpec s = parse_system(doc, systems[i], p, sc.tol);
    if (!labels.insert(s.label).second) {
      doc.fail(p + "/label", "duplicate system label \"" + s.label + "\"");
    }
    sc.systems.push_back(std::move(s));
  }

  if (root.contains("pipeline")) {
    const json& pipe = root.at("pipeline");
    if (!pipe.is_array()) doc.fail("/pipeline", "pipeline must be an array");
    for (std::size_t i = 0; i < pipe.size(); ++i) {
      const std::string p = "/pipeline/" + std::to_string(i);
      DeviceSpec d = parse_device(doc, sc, pipe[i], p);
      if (!sc.pipeline.empty() &&
          d.device.sector() != sc.pipeline.front().device.sector()) {
        doc.fail(p, "device acts on a different sector than the pipeline");
      }
      sc.pipeline.push_back(std::move(d));
    }
  }

  if (root.contains("frame") && !root.at("frame").is_null()) {
    sc.frame = parse_frame(doc, root.at("frame"), "/frame", sc);
  }
  return sc;
}

}  // namespace cartan::cli
