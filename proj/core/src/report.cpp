#include "gowers/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "gowers/version.hpp"

namespace gowers {

namespace {

using Json = nlohmann::ordered_json;

Json base(const std::string& seq_id) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["seq"] = seq_id;
  return j;
}

Json power_fields(const ExactAverage& avg) {
  Json j;
  j["power_num"] = avg.numerator.str();
  j["power_den"] = avg.denominator.str();
  return j;
}

}  // namespace

std::string to_json(const NormReport& rep) {
  Json j = base(rep.seq);
  j["s"] = rep.s;
  j["n"] = rep.n;
  j["power_num"] = rep.power.numerator.str();
  j["power_den"] = rep.power.denominator.str();
  j["norm"] = rep.norm;
  j["method"] = method_name(rep.method);
  return j.dump();
}

std::string to_json(const AutomaticSequence& seq, const CubeSpec& spec,
                    const ExactAverage& avg) {
  Json j = base(seq.id());
  j["s"] = spec.s;
  j["level"] = spec.level;
  j["offsets"] = spec.offsets;
  Json labels = Json::array();
  for (int a : spec.labels) labels.push_back(seq.element_name(a));
  j["labels"] = labels;
  j.update(power_fields(avg));
  j["value"] = avg.value();
  return j.dump();
}

std::string to_json(const APCountReport& rep) {
  Json j = base(rep.seq);
  j["s"] = nullptr;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["count"] = rep.count;
  j["total"] = rep.total;
  j["expected"] = rep.expected;
  j["deviation"] = rep.deviation;
  return j.dump();
}

std::string to_json(const ExpSumReport& rep) {
  Json j = base(rep.seq);
  j["s"] = nullptr;
  j["n"] = rep.n;
  j["grid"] = rep.grid;
  j["sup"] = rep.sup;
  j["sup_alpha"] = rep.sup_alpha;
  j["exponent"] = rep.exponent;
  j["normalized"] = rep.normalized;
  return j.dump();
}

std::string progression_json(const std::string& seq_id, std::uint64_t step,
                             std::uint64_t offset, std::uint64_t count,
                             long long value) {
  Json j = base(seq_id);
  j["s"] = nullptr;
  j["a"] = step;
  j["b"] = offset;
  j["m"] = count;
  j["value"] = value;
  return j.dump();
}

std::string poly_phase_json(const std::string& seq_id, std::uint64_t n,
                            const std::vector<double>& coeffs, double value) {
  Json j = base(seq_id);
  j["s"] = nullptr;
  j["n"] = n;
  j["coeffs"] = coeffs;
  j["value"] = value;
  return j.dump();
}

std::string to_json(const std::string& seq_id, std::uint64_t n,
                    std::uint64_t h_max, const SelfCorrelation& best) {
  Json j = base(seq_id);
  j["s"] = nullptr;
  j["n"] = n;
  j["h_max"] = h_max;
  j["m"] = best.m;
  j["h"] = best.h;
  j["value"] = best.value;
  return j.dump();
}

std::string spectrum_json(const std::string& seq_id, int s,
                          const DecayEstimate& est) {
  Json j = base(seq_id);
  j["s"] = s;
  j["num_vertices"] = est.num_vertices;
  j["lambda2"] = est.lambda2;
  j["c"] = est.c;
  j["c_prime"] = est.c_prime;
  j["fit_c"] = est.fit_c;
  Json samples = Json::array();
  for (auto [l, d] : est.samples) samples.push_back(Json::array({l, d}));
  j["samples"] = samples;
  return j.dump();
}

std::string graph_json(const WalkGraph& g, const GraphProperties& props) {
  Json j = base(g.seq.id());
  j["s"] = g.s;
  j["num_vertices"] = props.num_vertices;
  j["finite"] = props.finite;
  j["strongly_connected"] = props.strongly_connected;
  j["aperiodic"] = props.aperiodic;
  j["r_symmetric"] = props.r_symmetric;
  j["period"] = props.period;
  j["num_sccs"] = props.num_sccs;
  Json verts = Json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    verts.push_back(vertex_label(g, static_cast<int>(i)));
  j["vertices"] = verts;
  Json edges = Json::array();
  const int den_exp = g.s + 1;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (const auto& e : g.edges[i]) {
      Json edge;
      edge["from"] = i;
      edge["to"] = e.to;
      edge["num"] = e.multiplicity;
      edge["den"] = 1 << den_exp;
      edges.push_back(edge);
    }
  j["edges"] = edges;
  return j.dump();
}

std::string conjecture_json(const std::vector<ConjectureRow>& rows, int s,
                            std::uint64_t n, std::uint64_t q_max) {
  Json j = base("scan");
  j["s"] = s;
  j["n"] = n;
  j["q_max"] = q_max;
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json r;
    r["pattern"] = row.pattern;
    r["ok"] = row.ok;
    if (!row.ok) {
      r["error"] = row.error;
      arr.push_back(r);
      continue;
    }
    r["kernel_size"] = row.kernel_size;
    r["kernel_symmetric"] = row.kernel_symmetric;
    r["max_linear_corr"] = row.max_linear_corr;
    r["argmax_q"] = row.argmax_q;
    r["argmax_r"] = row.argmax_r;
    Json norms = Json::array();
    for (auto [level, norm] : row.norms)
      norms.push_back(Json::array({level, norm}));
    r["norms"] = norms;
    r["num_vertices"] = row.graph.num_vertices;
    r["strongly_connected"] = row.graph.strongly_connected;
    r["aperiodic"] = row.graph.aperiodic;
    r["r_symmetric"] = row.graph.r_symmetric;
    r["num_sccs"] = row.graph.num_sccs;
    r["lambda2"] = row.lambda2;
    r["c"] = row.c;
    arr.push_back(r);
  }
  j["rows"] = arr;
  return j.dump();
}

namespace {

std::string json_number(double v) {
  return Json(v).dump();
}

}  // namespace

std::string to_csv(const NormReport& rep) {
  std::ostringstream out;
  out << "seq,s,n,power_num,power_den,norm,method\n";
  out << rep.seq << ',' << rep.s << ',' << rep.n << ','
      << rep.power.numerator.str() << ',' << rep.power.denominator.str() << ','
      << json_number(rep.norm) << ',' << method_name(rep.method) << '\n';
  return out.str();
}

std::string to_csv(const std::vector<APCountReport>& reps) {
  std::ostringstream out;
  out << "seq,n,k,count,total,expected,deviation\n";
  for (const auto& rep : reps)
    out << rep.seq << ',' << rep.n << ',' << rep.k << ',' << rep.count << ','
        << rep.total << ',' << json_number(rep.expected) << ','
        << json_number(rep.deviation) << '\n';
  return out.str();
}

std::string to_csv(const std::vector<ExpSumReport>& reps) {
  std::ostringstream out;
  out << "seq,n,grid,sup,sup_alpha,exponent,normalized\n";
  for (const auto& rep : reps)
    out << rep.seq << ',' << rep.n << ',' << rep.grid << ','
        << json_number(rep.sup) << ',' << json_number(rep.sup_alpha) << ','
        << json_number(rep.exponent) << ',' << json_number(rep.normalized)
        << '\n';
  return out.str();
}

std::string conjecture_csv(const std::vector<ConjectureRow>& rows) {
  std::ostringstream out;
  out << "pattern,ok,kernel_size,kernel_symmetric,max_linear_corr,argmax_q,"
         "argmax_r,num_vertices,strongly_connected,aperiodic,r_symmetric,"
         "lambda2,c,last_level,last_norm\n";
  for (const auto& row : rows) {
    out << row.pattern << ',' << (row.ok ? 1 : 0) << ',' << row.kernel_size
        << ',' << (row.kernel_symmetric ? 1 : 0) << ','
        << json_number(row.max_linear_corr) << ',' << row.argmax_q << ','
        << row.argmax_r << ',' << row.graph.num_vertices << ','
        << (row.graph.strongly_connected ? 1 : 0) << ','
        << (row.graph.aperiodic ? 1 : 0) << ','
        << (row.graph.r_symmetric ? 1 : 0) << ',' << json_number(row.lambda2)
        << ',' << json_number(row.c) << ',';
    if (row.norms.empty())
      out << ",";
    else
      out << row.norms.back().first << ',' << json_number(row.norms.back().second);
    out << '\n';
  }
  return out.str();
}

}  // namespace gowers
