#include "commands.hpp"

#include <cstdio>
#include <ostream>

namespace cartan::cli {

namespace {

json assertion(const std::string& id, double residual, double threshold,
               bool& passed) {
  const bool ok = residual < threshold;
  passed = passed && ok;
  return {{"id", id},
          {"residual", residual},
          {"threshold", threshold},
          {"status", ok ? "PASS" : "FAIL"}};
}

json device_json(const DeviceSpec& d) {
  json j = {{"family", std::string(to_string(d.family))},
            {"matrix", to_json(d.device.realized.entries())}};
  switch (d.family) {
    case DeviceFamily::PiSmall:
    case DeviceFamily::PiBig:
      j["system"] = d.system;
      j["branch"] = d.branch;
      break;
    case DeviceFamily::Exchange:
      j["system"] = d.system;
      j["from"] = d.from;
      j["to"] = d.to;
      break;
    case DeviceFamily::MCreate:
      j["in"] = d.in;
      j["out"] = d.out;
      j["branch"] = d.branch;
      break;
  }
  return j;
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmt_complex(const json& z) {
  return "(" + fmt_num(z[0].get<double>()) + ", " + fmt_num(z[1].get<double>()) +
         ")";
}

std::string run_report_text(const json& rep) {
  std::string s;
  s += "systems\n";
  for (const auto& [label, sys] : rep["systems"].items()) {
    s += "  " + label + " (" + sys["sector"].get<std::string>() + ")  born " +
         fmt_num(sys["born"][0].get<double>()) + " " +
         fmt_num(sys["born"][1].get<double>());
    if (sys.contains("expectation")) {
      s += "  <S> " + fmt_num(sys["expectation"].get<double>());
    }
    s += "\n";
  }
  if (rep.contains("pipeline")) {
    const json& p = rep["pipeline"];
    s += "pipeline\n  trace " + fmt_complex(p["trace"]) + "\n";
    if (p.contains("weight")) {
      s += "  weight " + fmt_complex(p["weight"]) + "\n";
    }
  }
  if (rep.contains("frame")) {
    const json& f = rep["frame"];
    s += "frame " + f["kind"].get<std::string>() + "\n";
    if (f.contains("note")) s += "  " + f["note"].get<std::string>() + "\n";
    if (f.contains("invariance")) {
      for (const auto& [id, c] : f["invariance"].items()) {
        s += "  " + c["status"].get<std::string>() + " " + id + " residual=" +
             fmt_num(c["residual"].get<double>()) + "\n";
      }
    }
  }
  s += "assertions\n";
  for (const auto& a : rep["assertions"]) {
    s += "  " + a["status"].get<std::string>() + " " +
         a["id"].get<std::string>() + " residual=" +
         fmt_num(a["residual"].get<double>()) +
         " threshold=" + fmt_num(a["threshold"].get<double>()) + "\n";
  }
  s += rep["passed"].get<bool>() ? "PASS\n" : "FAIL\n";
  return s;
}

}  // namespace

json run_report(const Scenario& sc, bool& passed) {
  passed = true;
  json assertions = json::array();
  json echo_systems = json::array();
  json systems = json::object();

  for (const auto& s : sc.systems) {
    const State& st = s.state;
    json e = {{"label", s.label},
              {"sector", std::string(to_string(st.sector()))},
              {"state", to_json(st.vector().components())}};
    const double b0 = born(st, 0);
    const double b1 = born(st, 1);
    json entry = {{"sector", std::string(to_string(st.sector()))},
                  {"born", {b0, b1}},
                  {"density", to_json(density(st).op.entries())}};
    if (s.observable) {
      e["spectrum"] = {s.observable->eigenvalue(0), s.observable->eigenvalue(1)};
      entry["expectation"] = expectation(*s.observable, st);
      const double via_trace =
          sector_trace(compose(density(st).op, s.observable->as_operator())).real();
      assertions.push_back(assertion("expectation-trace-form/" + s.label,
                                     std::abs(entry["expectation"].get<double>() -
                                              via_trace),
                                     sc.tol, passed));
    }
    assertions.push_back(assertion("born-sum/" + s.label,
                                   std::abs(b0 + b1 - 1.0), sc.tol, passed));
    echo_systems.push_back(std::move(e));
    systems[s.label] = std::move(entry);
  }

  json rep = {{"scenario", {{"seed", sc.seed},
                            {"tol", sc.tol},
                            {"systems", echo_systems}}},
              {"systems", systems}};

  if (!sc.pipeline.empty()) {
    std::vector<MeasurementDevice> devices;
    json devs = json::array();
    for (const auto& d : sc.pipeline) {
      devices.push_back(d.device);
      devs.push_back(device_json(d));
    }
    const SequenceResult res = compose_sequence(devices);
    json p = {{"devices", devs},
              {"product", to_json(res.product.entries())},
              {"trace", to_json(res.trace)}};
    if (res.weight) {
      json t = json::array();
      for (Complex z : res.transmissions) t.push_back(to_json(z));
      p["weight"] = to_json(*res.weight);
      p["transmissions"] = t;
      p["predicted"] = to_json(res.predicted->entries());
      p["residual"] = res.residual;
      assertions.push_back(
          assertion("pipeline-closed-form", res.residual, sc.tol, passed));
    }
    rep["scenario"]["pipeline"] = devs;
    rep["pipeline"] = p;
  }

  if (sc.frame) {
    const FrameSpec& f = *sc.frame;
    json fj = {{"kind", f.kind}};
    rep["scenario"]["frame"] = f.echo;
    if (f.element) {
      const Mat4& m = f.element->matrix();
      fj["matrix"] = to_json(m);
      fj["pseudo_unitarity_residual"] = pseudo_unitarity_residual(m);
      fj["unitarity_residual"] = unitarity_residual(m);
      fj["det_residual"] = det_residual(m);
    }
    if (!f.note.empty()) fj["note"] = f.note;
    if (f.transform) {
      FrameInputs in;
      for (const auto& s : sc.systems) {
        in.states.push_back(s.state);
        if (s.observable) in.observables.push_back(*s.observable);
      }
      const InvarianceReport ir = invariance_report(in, *f.transform, sc.tol);
      json claims = json::object();
      for (const auto& [id, c] : ir.claims) {
        claims[id] = {{"anchor", c.anchor},
                      {"kind", std::string(to_string(c.kind))},
                      {"residual", c.residual},
                      {"threshold", c.threshold},
                      {"status", std::string(to_string(c.status))}};
      }
      fj["invariance"] = claims;
      if (!ir.passed()) passed = false;
      json amps = json::object();
      for (const auto& s : sc.systems) {
        amps[s.label] = to_json(transform_state_amplitudes(s.state, *f.transform));
      }
      fj["primed_amplitudes"] = amps;
    }
    rep["frame"] = fj;
  }

  rep["assertions"] = assertions;
  rep["passed"] = passed;
  return rep;
}

int cmd_check(const CheckOptions& opts, Format fmt, std::ostream& out,
              std::ostream& err) {
  if (opts.trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kExitUsage;
  }
  if (!(opts.tol > 0)) {
    err << "error: --tol must be positive\n";
    return kExitUsage;
  }
  try {
    const CheckResult result = run_all_suites(opts);
    if (fmt == Format::Json) {
      out << check_report_json(opts, result).dump(2) << "\n";
    } else {
      out << check_report_text(opts, result);
    }
    return result.passed() ? kExitPass : kExitFail;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitFail;
  }
}

int cmd_run(const std::string& scenario_path, Format fmt,
            std::optional<double> tol_override, std::ostream& out,
            std::ostream& err) {
  try {
    const Document doc = load_document(scenario_path);
    const Scenario sc = parse_scenario(doc, tol_override);
    bool passed = true;
    const json rep = run_report(sc, passed);
    out << (fmt == Format::Json ? rep.dump(2) + "\n" : run_report_text(rep));
    return passed ? kExitPass : kExitFail;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitFail;
  }
}

int cmd_decompose(const std::string& input_path, double tol, Format fmt,
                  std::ostream& out, std::ostream& err) {
  try {
    const Document doc = load_document(input_path);
    const json& root = doc.value;
    const bool wrapped = root.is_object();
    if (wrapped && !root.contains("matrix")) {
      doc.fail("", "expected a 4x4 matrix or an object with a \"matrix\" field");
    }
    const Mat4 m = wrapped ? mat4_from(doc, root.at("matrix"), "/matrix")
                           : mat4_from(doc, root, "");
    GroupElement u = GroupElement::identity();
    try {
      u = GroupElement::certify(m, tol, 10 * tol);
    } catch (const Error& e) {
      doc.fail(wrapped ? "/matrix" : "",
               std::string(to_string(e.code())) + ": " + e.what());
    }
    const CartanFactors f = cartan_decompose(u, tol);
    const double threshold = 10 * tol;
    const bool ok = f.reconstruction_residual < threshold;
    const json rep = {
        {"input", to_json(m)},
        {"unitary", to_json(f.unitary_part.matrix())},
        {"positive", to_json(f.positive_part.matrix())},
        {"reconstruction_residual", f.reconstruction_residual},
        {"threshold", threshold},
        {"min_eigenvalue", f.min_eigenvalue},
        {"unitary_residual", unitarity_residual(f.unitary_part.matrix())},
        {"status", ok ? "PASS" : "FAIL"}};
    if (fmt == Format::Json) {
      out << rep.dump(2) << "\n";
    } else {
      auto print = [&](const char* name, const Mat4& a) {
        out << name << "\n";
        for (int i = 0; i < 4; ++i) {
          out << " ";
          for (int j = 0; j < 4; ++j) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %+.6f%+.6fi", a(i, j).real(),
                          a(i, j).imag());
            out << buf;
          }
          out << "\n";
        }
      };
      print("U", f.unitary_part.matrix());
      print("H", f.positive_part.matrix());
      out << "residual " << fmt_num(f.reconstruction_residual) << "\n"
          << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? kExitPass : kExitFail;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace cartan::cli
