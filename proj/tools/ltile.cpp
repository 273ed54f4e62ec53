// ltile: command-line front end.
//
// Exit codes: 0 found / verified / holds, 1 none-exhausted / refuted,
// 2 inconclusive (cap hit, interrupted, unresolved), 3 usage or parse error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltile/ltile.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ltile;

enum Exit : int { kOk = 0, kNone = 1, kInconclusive = 2, kUsage = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// No partial files: write a sibling temp file, then rename over the target.
void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Common {
  bool json_out = false;
  std::string format = "text";
  std::string manifest_path;
  unsigned threads = 1;
};

// One per run. Parameters exclude execution-only knobs (threads, paths), so
// the token and JSON are identical across worker counts.
class Manifest {
 public:
  Manifest(std::string command, json params) : command_(std::move(command)), params_(std::move(params)), start_(utc_now()) {}

  void artifact(const std::string& path) { artifacts_.push_back(path); }

  json finish(const std::string& status, const json& result) const {
    json m;
    m["schema"] = 1;
    m["command"] = command_;
    m["parameters"] = params_;
    m["determinism_token"] = hex64(fnv1a(command_ + "\n" + params_.dump() + "\n" + result.dump()));
    m["status"] = status;
    m["artifacts"] = artifacts_;
    m["started_at"] = start_;
    m["finished_at"] = utc_now();
    return m;
  }

 private:
  std::string command_;
  json params_;
  std::string start_;
  std::vector<std::string> artifacts_;
};

// Prints the result (JSON or text) and emits the manifest exactly once.
int emit(const Common& c, const Manifest& man, const std::string& status, const json& result, const std::string& text,
         int code) {
  const json m = man.finish(status, result);
  if (c.json_out || c.format == "json") {
    json doc;
    doc["schema"] = 1;
    doc["status"] = status;
    doc["result"] = result;
    doc["manifest"] = m;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text;
    if (c.manifest_path.empty()) std::cerr << "manifest: " << m.dump() << '\n';
  }
  if (!c.manifest_path.empty()) write_atomic(c.manifest_path, m.dump(2) + "\n");
  return code;
}

std::string interval_str(const Interval& x) {
  std::ostringstream os;
  os << std::setprecision(12) << "[" << x.lo().convert_to<double>() << ", " << x.hi().convert_to<double>() << "]";
  return os.str();
}

json interval_json(const Interval& x) {
  // exact endpoints plus a readable approximation
  return json{{"lo", x.lo().str()}, {"hi", x.hi().str()}, {"approx", x.to_double()}};
}

json certificate_json(const SplitterSet& S) {
  json e = json::array();
  for (const auto& g : S.elements()) e.push_back(S.group().format(g));
  return json{{"group", S.group().to_string()},
              {"M", S.magnitudes().to_string()},
              {"t", S.t()},
              {"elements", e},
              {"status", to_string(S.status())}};
}

MagnitudeSet magnitudes_from(const std::string& M, int m) {
  if (m > 0 && !M.empty()) throw UsageError("give either --m or --M, not both");
  if (m > 0) return MagnitudeSet::asymmetric(m);
  if (M.empty()) throw UsageError("magnitude set required: --M -kminus..kplus or --m <int>");
  return MagnitudeSet::parse(M);
}

// ---------------------------------------------------------------- ball

struct BallArgs {
  std::string ball;
  int m = 0;
  int n = 0;
  bool enumerate = false;
  std::uint64_t cap = 1'000'000;
};

int cmd_ball(const Common& c, const BallArgs& a) {
  ErrorBall b;
  if (!a.ball.empty()) {
    if (a.m) throw UsageError("give either --ball or --m/--n");
    b = ErrorBall::parse(a.ball);
  } else {
    if (a.m < 1 || a.n < 1) throw UsageError("need --ball n,t,k+,k- or --m <int> --n <int>");
    b = ErrorBall(a.n, std::min(2, a.n), a.m, a.m - 1);
  }
  Manifest man("ball", json{{"ball", b.to_string()}, {"enumerate", a.enumerate}});
  const BigInt size = ball_size(b);
  json result{{"ball", b.to_string()}, {"size", size.str()}};
  std::ostringstream text;
  text << "|B(" << b.to_string() << ")| = " << size << '\n';
  if (a.enumerate) {
    const auto pts = ball_enumerate(b, a.cap);
    json arr = json::array();
    for (const auto& p : pts) {
      arr.push_back(p);
      for (std::size_t i = 0; i < p.size(); ++i) text << (i ? " " : "") << p[i];
      text << '\n';
    }
    result["points"] = arr;
  }
  return emit(c, man, "ok", result, text.str(), kOk);
}

// ---------------------------------------------------------------- tau

int cmd_tau(const Common& c, int m, std::optional<long long> x) {
  Manifest man("tau", json{{"m", m}, {"x", x ? json(*x) : json(nullptr)}});
  json values = json::array();
  std::ostringstream text;
  const long long lo = x ? *x : -2LL * m + 2, hi = x ? *x : 2LL * m;
  for (long long v = lo; v <= hi; ++v) {
    const auto tv = tau(m, v);
    values.push_back(json{{"x", v}, {"tau", tv}});
    text << "tau(" << v << ") = " << tv << '\n';
  }
  const auto ids = tau_identities(m);
  json result{{"m", m}, {"values", values}, {"sums", {{"upper", ids.upper}, {"lower", ids.lower}, {"odd", ids.odd}}}};
  text << "sum tau(x), x in [m+1,2m] = " << ids.upper << "\nsum tau(x), x in [-2m+2,-m] = " << ids.lower
       << "\nsum tau(x), odd x = " << ids.odd << '\n';
  if (c.format == "csv") {
    std::ostringstream csv;
    csv << "x,tau\n";
    for (const auto& v : values) csv << v["x"].get<long long>() << ',' << v["tau"].get<long long>() << '\n';
    return emit(c, man, "ok", result, csv.str(), kOk);
  }
  return emit(c, man, "ok", result, text.str(), kOk);
}

// ---------------------------------------------------------------- groups

int cmd_groups(const Common& c, std::uint64_t order) {
  Manifest man("groups", json{{"order", order}});
  json arr = json::array();
  std::ostringstream text, csv;
  csv << "group,rank,exponent,m2,cyclic\n";
  for (const auto& G : enumerate_groups(order)) {
    const auto m2 = G.count_order(2);
    arr.push_back(json{{"group", G.to_string()}, {"rank", G.rank()}, {"exponent", G.exponent()}, {"m2", m2},
                       {"cyclic", G.is_cyclic()}});
    text << G.to_string() << "  rank=" << G.rank() << " exp=" << G.exponent() << " m2=" << m2 << '\n';
    csv << G.to_string() << ',' << G.rank() << ',' << G.exponent() << ',' << m2 << ',' << G.is_cyclic() << '\n';
  }
  json result{{"order", order}, {"groups", arr}};
  return emit(c, man, "ok", result, c.format == "csv" ? csv.str() : text.str(), kOk);
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string group;
  std::uint64_t order = 0;
  std::string M;
  int m = 0;
  int t = 0;
  int n = 0;
  bool all = false;
  std::string symmetry = "units";
  bool no_structural = false;
  std::uint64_t cap_nodes = 0;
  std::string checkpoint;
  std::string out;
  std::uint64_t stop_after_units = 0;
};

json progress_to_json(const SearchProgress& p) {
  json done = json::array();
  for (std::uint64_t u = 0; u < p.done.size();) {
    if (!p.done[u]) {
      ++u;
      continue;
    }
    std::uint64_t v = u;
    while (v + 1 < p.done.size() && p.done[v + 1]) ++v;
    done.push_back(json::array({u, v}));
    u = v + 1;
  }
  json sols = json::array();
  for (const auto& [u, ss] : p.solutions) sols.push_back(json::array({u, ss}));
  return json{{"units_total", p.units_total}, {"done", done}, {"unit_nodes", p.unit_nodes},
              {"solutions", sols}, {"work_nodes", p.nodes}};
}

SearchProgress progress_from_json(const json& j) {
  SearchProgress p;
  p.units_total = j.at("units_total").get<std::uint64_t>();
  p.done.assign(p.units_total, 0);
  for (const auto& r : j.at("done")) {
    const auto a = r.at(0).get<std::uint64_t>(), b = r.at(1).get<std::uint64_t>();
    if (b >= p.units_total || a > b) throw UsageError("checkpoint: bad unit range");
    for (auto u = a; u <= b; ++u) p.done[u] = 1;
  }
  p.unit_nodes = j.at("unit_nodes").get<std::vector<std::uint64_t>>();
  if (p.unit_nodes.size() != p.units_total) throw UsageError("checkpoint: unit_nodes length mismatch");
  for (const auto& e : j.at("solutions")) p.solutions[e.at(0).get<std::uint64_t>()] = e.at(1).get<std::vector<IndexSet>>();
  p.nodes = j.at("work_nodes").get<std::uint64_t>();
  return p;
}

int status_code(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return kOk;
    case SearchStatus::none_exhausted: return kNone;
    default: return kInconclusive;
  }
}

int cmd_search(const Common& c, const SearchArgs& a) {
  if (a.group.empty() == (a.order == 0)) throw UsageError("give exactly one of --group or --order");
  const MagnitudeSet M = magnitudes_from(a.M, a.m);
  const int t = a.t ? a.t : (a.m ? 2 : 0);
  if (t < 1) throw UsageError("--t is required");
  if (a.n < 1) throw UsageError("--n is required");
  if (a.symmetry != "units" && a.symmetry != "none") throw UsageError("--symmetry must be units or none");

  SearchOptions opts;
  opts.mode = a.all ? SearchMode::all : SearchMode::first;
  opts.symmetry = a.symmetry == "none" ? Symmetry::none : Symmetry::units;
  opts.threads = c.threads;
  opts.cap_nodes = a.cap_nodes;
  opts.structural_prune = !a.no_structural;
  if (a.stop_after_units) opts.stop_after_units = a.stop_after_units;

  std::vector<AbelianGroup> groups;
  if (!a.group.empty())
    groups.push_back(AbelianGroup::parse(a.group));
  else
    groups = enumerate_groups(a.order);

  json params{{"groups", a.group.empty() ? json{{"order", a.order}} : json{{"group", groups[0].to_string()}}},
              {"M", M.to_string()},
              {"t", t},
              {"n", a.n},
              {"mode", a.all ? "all" : "first"},
              {"symmetry", a.symmetry},
              {"structural_prune", !a.no_structural},
              {"cap_nodes", a.cap_nodes}};
  Manifest man("search", params);

  // checkpoint: {schema, kind, params, groups: {name: progress}, status}
  json ckpt;
  bool resumed = false;
  if (!a.checkpoint.empty() && std::filesystem::exists(a.checkpoint)) {
    try {
      ckpt = json::parse(read_file(a.checkpoint));
    } catch (const json::exception& e) {
      throw UsageError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    json saved = ckpt.value("params", json());
    json want = params;
    saved.erase("cap_nodes");
    want.erase("cap_nodes");
    if (ckpt.value("kind", "") != "ltile-search-checkpoint" || saved != want)
      throw UsageError("checkpoint parameters differ from this search; refusing to resume\n  saved: " + saved.dump() +
                       "\n  given: " + want.dump());
    resumed = true;
  } else {
    ckpt = json{{"schema", 1}, {"kind", "ltile-search-checkpoint"}, {"params", params}, {"groups", json::object()},
                {"status", "running"}};
  }

  auto save = [&](const std::string& status) {
    if (a.checkpoint.empty()) return;
    ckpt["status"] = status;
    write_atomic(a.checkpoint, ckpt.dump() + "\n");
  };

  json per_group = json::array();
  std::ostringstream text;
  SearchStatus overall = SearchStatus::none_exhausted;
  std::optional<SearchStatus> incomplete;
  bool any_found = false;
  std::optional<SplitterSet> first_cert;
  std::vector<SplitterSet> all_certs;
  for (const auto& G : groups) {
    const std::string name = G.to_string();
    Searcher searcher(G, M, t, a.n, opts);
    SearchProgress prog;
    if (ckpt["groups"].contains(name)) prog = progress_from_json(ckpt["groups"][name]);
    auto last_write = std::chrono::steady_clock::now();
    auto on_unit = [&](const SearchProgress& p) {
      if (a.checkpoint.empty()) return;
      const auto now = std::chrono::steady_clock::now();
      if (now - last_write < std::chrono::seconds(1)) return;
      last_write = now;
      ckpt["groups"][name] = progress_to_json(p);
      save("running");
    };
    const auto r = searcher.run(&prog, on_unit);
    ckpt["groups"][name] = progress_to_json(prog);

    json g{{"group", name},
           {"status", to_string(r.status)},
           {"units_total", r.stats.units_total},
           {"units_done", r.stats.units_done},
           {"nodes", r.stats.nodes}};
    if (!r.note.empty()) g["note"] = r.note;
    json certs = json::array();
    for (const auto& S : r.certificates) certs.push_back(certificate_json(S));
    g["certificates"] = certs;
    per_group.push_back(g);
    text << name << ": " << to_string(r.status) << " (units " << r.stats.units_done << "/" << r.stats.units_total
         << ", nodes " << r.stats.nodes << ")";
    if (!r.note.empty()) text << " [" << r.note << "]";
    text << '\n';
    for (const auto& S : r.certificates) {
      text << "  S = {";
      for (std::size_t i = 0; i < S.elements().size(); ++i)
        text << (i ? ", " : "") << G.format(S.elements()[i]);
      text << "}  " << to_string(S.status()) << '\n';
      all_certs.push_back(S);
      if (!first_cert) first_cert = S;
    }

    if (r.status == SearchStatus::found) {
      any_found = true;
      if (!a.all) break;
    } else if (r.status != SearchStatus::none_exhausted) {
      if (!incomplete || r.status == SearchStatus::interrupted) incomplete = r.status;
      if (r.status == SearchStatus::interrupted) break;
    }
  }
  // --all asks for every solution, so an unfinished group outranks a find
  if (a.all ? incomplete.has_value() : (!any_found && incomplete.has_value()))
    overall = *incomplete;
  else if (any_found)
    overall = SearchStatus::found;
  save(to_string(overall));
  if (!a.checkpoint.empty()) man.artifact(a.checkpoint);
  if (!a.out.empty() && first_cert) {
    write_atomic(a.out, emit_certificate(*first_cert));
    man.artifact(a.out);
  }
  json result{{"status", to_string(overall)}, {"groups", per_group}};
  if (resumed) text << "(resumed from " << a.checkpoint << ")\n";
  text << "result: " << to_string(overall) << '\n';
  return emit(c, man, to_string(overall), result, text.str(), status_code(overall));
}

// ---------------------------------------------------------------- verify / bridge

struct LatticeArgs {
  std::string cert;
  std::string lattice;
  std::string ball;
  long long radius = 0;
  std::size_t geom_cap = 6;
  std::string out;
};

json lattice_json(const IntegerLattice& L) {
  json rows = json::array();
  for (const auto& r : L.generator()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  return json{{"n", L.dimension()}, {"generator", rows}, {"determinant", L.determinant().str()}};
}

int verify_certificate(const Common& c, const std::string& path) {
  Manifest man("verify", json{{"certificate", std::filesystem::path(path).filename().string()}});
  SplitterSet S = [&] {
    try {
      return parse_certificate(read_file(path));
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }();
  const auto status = S.certify();
  const BigInt bsize = ball_size(S.ball());
  json result = certificate_json(S);
  result["ball_size"] = bsize.str();
  result["group_order"] = S.group().order();
  std::ostringstream text;
  text << "certificate " << path << ": " << to_string(status) << " (|G| = " << S.group().order()
       << ", |B| = " << bsize << ")\n";
  if (auto col = find_collision(S)) {
    result["collision"] = json{{"value", S.group().format(col->value)}};
    text << "  collision at " << S.group().format(col->value) << '\n';
  }
  const bool ok = status == SplitStatus::partial || status == SplitStatus::full;
  return emit(c, man, ok ? "verified" : "refuted", result, text.str(), ok ? kOk : kNone);
}

int verify_lattice(const Common& c, const LatticeArgs& a) {
  if (a.ball.empty()) throw UsageError("--ball n,t,k+,k- is required with --lattice");
  const ErrorBall ball = ErrorBall::parse(a.ball);
  const IntegerLattice L = [&] {
    try {
      return parse_lattice(read_file(a.lattice));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const long long R = a.radius ? a.radius : 2LL * (ball.kplus + ball.kminus) + 2;
  Manifest man("verify", json{{"lattice", std::filesystem::path(a.lattice).filename().string()},
                              {"ball", ball.to_string()},
                              {"radius", R},
                              {"geom_cap", a.geom_cap}});
  json result{{"lattice", lattice_json(L)}, {"ball", ball.to_string()}, {"ball_size", ball_size(ball).str()}};
  std::ostringstream text;
  text << "lattice n=" << L.dimension() << " |det| = " << L.determinant() << ", |B| = " << ball_size(ball) << '\n';
  if (static_cast<std::size_t>(ball.n) != L.dimension()) throw UsageError("ball dimension differs from lattice dimension");
  QuotientSplitting q;
  try {
    q = quotient_splitting(L, ball);
  } catch (const DeterminantMismatch& e) {
    result["determinant_mismatch"] = json{{"determinant", e.determinant.str()}, {"ball_size", e.ball_size.str()}};
    text << "refuted: " << e.what() << '\n';
    return emit(c, man, "refuted", result, text.str(), kNone);
  }
  result["quotient"] = json{{"group", q.map.target.to_string()}, {"status", to_string(q.status)}};
  text << "quotient " << q.map.target.to_string() << ": " << to_string(q.status) << '\n';
  const auto geo = verify_tiling_box(ball, L, R, a.geom_cap);
  json g{{"status", to_string(geo.status)}, {"radius", R}, {"lattice_points", geo.lattice_points},
         {"interior_points", geo.interior_points}};
  if (geo.status == TilingStatus::fails) g["witness"] = json{{"point", geo.witness}, {"cover_count", geo.witness_count}};
  result["geometric"] = g;
  text << "geometric box check (R=" << R << "): " << to_string(geo.status) << '\n';
  if (geo.status == TilingStatus::fails) {
    text << "  witness point (";
    for (std::size_t i = 0; i < geo.witness.size(); ++i) text << (i ? "," : "") << geo.witness[i];
    text << ") covered " << geo.witness_count << " times\n";
  }
  const bool algebraic = q.status == SplitStatus::full;
  if (geo.status != TilingStatus::inconclusive && algebraic != (geo.status == TilingStatus::tiles))
    throw std::logic_error("algebraic and geometric tiling checks disagree");
  if (!algebraic) return emit(c, man, "refuted", result, text.str(), kNone);
  return emit(c, man, "verified", result, text.str(), kOk);
}

int cmd_verify(const Common& c, const LatticeArgs& a) {
  if (a.cert.empty() == a.lattice.empty()) throw UsageError("give exactly one of --cert or --lattice");
  return a.cert.empty() ? verify_lattice(c, a) : verify_certificate(c, a.cert);
}

int cmd_bridge(const Common& c, const LatticeArgs& a) {
  if (a.cert.empty() == a.lattice.empty()) throw UsageError("give exactly one of --cert or --lattice");
  std::ostringstream text;
  if (!a.cert.empty()) {
    Manifest man("bridge", json{{"direction", "cert-to-lattice"},
                                {"certificate", std::filesystem::path(a.cert).filename().string()}});
    SplitterSet S = [&] {
      try {
        return parse_certificate(read_file(a.cert));
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
    }();
    if (!verify_full(S)) {
      text << "refuted: certificate is not a full splitting\n";
      return emit(c, man, "refuted", json{{"certificate", certificate_json(S)}}, text.str(), kNone);
    }
    const auto L = lattice_from_splitting(S);
    const std::string body = emit_lattice(L);
    if (!a.out.empty()) {
      write_atomic(a.out, body);
      man.artifact(a.out);
    } else {
      text << body;
    }
    text << "|det| = " << L.determinant() << " = |G|\n";
    return emit(c, man, "verified", json{{"lattice", lattice_json(L)}}, text.str(), kOk);
  }
  if (a.ball.empty()) throw UsageError("--ball n,t,k+,k- is required with --lattice");
  const ErrorBall ball = ErrorBall::parse(a.ball);
  Manifest man("bridge", json{{"direction", "lattice-to-cert"},
                              {"lattice", std::filesystem::path(a.lattice).filename().string()},
                              {"ball", ball.to_string()}});
  const IntegerLattice L = [&] {
    try {
      return parse_lattice(read_file(a.lattice));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  QuotientSplitting q;
  try {
    q = quotient_splitting(L, ball);
  } catch (const DeterminantMismatch& e) {
    text << "refuted: " << e.what() << '\n';
    return emit(c, man, "refuted",
                json{{"determinant_mismatch", {{"determinant", e.determinant.str()}, {"ball_size", e.ball_size.str()}}}},
                text.str(), kNone);
  }
  if (!q.splitter || q.status != SplitStatus::full) {
    text << "refuted: quotient " << q.map.target.to_string() << " is not split by the images\n";
    return emit(c, man, "refuted", json{{"group", q.map.target.to_string()}, {"status", to_string(q.status)}}, text.str(),
                kNone);
  }
  const std::string body = emit_certificate(*q.splitter);
  if (!a.out.empty()) {
    write_atomic(a.out, body);
    man.artifact(a.out);
  } else {
    text << body;
  }
  return emit(c, man, "verified", json{{"certificate", certificate_json(*q.splitter)}}, text.str(), kOk);
}

// ---------------------------------------------------------------- screen

struct ScreenArgs {
  std::string m_range;
  std::string out;
  std::string search_band = "auto";
  std::uint64_t cap_nodes = 0;
};

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return {v, v};
    }
    const auto a = std::stoull(s.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("trailing");
    const std::string tail = s.substr(dots + 2);
    const auto b = std::stoull(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("trailing");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--m must be an integer or a range lo..hi, got '" + s + "'");
  }
}

std::string decimal(const BigRational& r) {
  // dimension bounds have at most two decimals
  const BigInt scaled = ::ltile::detail::floor_rational(r * 100);
  std::ostringstream os;
  os << scaled / 100 << '.' << std::setw(2) << std::setfill('0') << static_cast<int>(scaled % 100);
  return os.str();
}

// "3-11;14" style compression of a sorted list
std::string runs(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
    os << (i ? ";" : "") << v[i];
    if (j > i) os << '-' << v[j];
    i = j + 1;
  }
  return os.str();
}

json verdict_json(std::uint64_t n, const screen::ScreenVerdict& v) {
  json ev = json::array();
  for (const auto& e : v.evidence)
    ev.push_back(json{{"name", e.name},
                      {"requires", e.relation},
                      {"lhs", interval_json(e.lhs)},
                      {"rhs", interval_json(e.rhs)},
                      {"contradicted", e.contradicted},
                      {"stable", e.stable}});
  return json{{"n", n}, {"status", screen::to_string(v.status)}, {"reason", v.reason}, {"evidence", ev},
              {"notes", v.notes}};
}

// Settles the search band for m = 2, 3 by exhausting every group.
std::vector<std::uint64_t> search_band(std::uint64_t m, const std::vector<std::uint64_t>& ns, const Common& c,
                                       std::uint64_t cap, json& log, bool& found_tiling) {
  std::vector<std::uint64_t> settled;
  for (auto n : ns) {
    const auto order = family_ball_size(m, n);
    SearchOptions opts;
    opts.threads = c.threads;
    opts.cap_nodes = cap;
    bool all_none = true;
    json groups = json::array();
    for (const auto& G : enumerate_groups(static_cast<std::uint64_t>(order))) {
      const auto r = search(G, MagnitudeSet::asymmetric(static_cast<int>(m)), 2, static_cast<int>(n), opts);
      groups.push_back(json{{"group", G.to_string()}, {"status", to_string(r.status)}, {"nodes", r.stats.nodes}});
      if (r.status == SearchStatus::found) found_tiling = true;
      if (r.status != SearchStatus::none_exhausted) all_none = false;
    }
    log.push_back(json{{"m", m}, {"n", n}, {"groups", groups}});
    if (all_none) settled.push_back(n);
  }
  return settled;
}

int cmd_screen(const Common& c, const ScreenArgs& a) {
  const auto [lo, hi] = parse_range(a.m_range);
  if (lo < 2 || hi < lo) throw UsageError("--m range must satisfy 2 <= lo <= hi");
  Manifest man("screen", json{{"m", std::to_string(lo) + ".." + std::to_string(hi)},
                              {"search_band", a.search_band},
                              {"cap_nodes", a.cap_nodes}});
  json reports = json::array();
  json band_log = json::array();
  std::ostringstream text, csv;
  csv << "m,prop1_ceiling,max_survivor,n_bound,ok,survivors\n";
  bool all_ok = true, any_survivor = false, unresolved = false, found_tiling = false;
  const std::uint64_t bulk_lo = std::max<std::uint64_t>(lo, 4);
  const auto bulk = hi >= bulk_lo ? screen::screen_range(bulk_lo, hi, c.threads) : std::vector<screen::ScreenReport>{};
  for (std::uint64_t m = lo; m <= hi; ++m) {
    std::vector<std::uint64_t> searched;
    const bool band = a.search_band == "on" ? (m == 2 || m == 3) : a.search_band == "auto" && m == 2;
    if (band) {
      const auto pre = screen::screen_m(m);
      searched = search_band(m, pre.needs_search, c, a.cap_nodes, band_log, found_tiling);
    }
    const auto rep = m >= bulk_lo ? bulk[m - bulk_lo] : screen::screen_m(m, searched);
    all_ok = all_ok && rep.ok;
    any_survivor = any_survivor || !rep.survivors.empty();
    if ((m == 2 || m == 3) && !rep.needs_search.empty()) unresolved = true;
    json exact = json::array();
    for (const auto& [n, v] : rep.exact_cases) exact.push_back(verdict_json(n, v));
    json r{{"m", m},
           {"prop1_ceiling", rep.prop1_ceiling ? json(*rep.prop1_ceiling) : json(nullptr)},
           {"scanned_to", rep.scanned_to},
           {"survivors", rep.survivors},
           {"needs_search", rep.needs_search},
           {"condition2", rep.condition2},
           {"max_survivor", rep.max_survivor ? json(*rep.max_survivor) : json(nullptr)},
           {"n_bound", std::stod(decimal(rep.dimension_bound))},
           {"ok", rep.ok},
           {"exact_cases", exact}};
    if (!searched.empty()) r["searched"] = searched;
    reports.push_back(r);
    text << "m=" << m << " ceiling=" << (rep.prop1_ceiling ? std::to_string(*rep.prop1_ceiling) : "none")
         << " max_survivor=" << (rep.max_survivor ? std::to_string(*rep.max_survivor) : "none")
         << " bound=" << decimal(rep.dimension_bound) << " ok=" << (rep.ok ? "true" : "false");
    if (m <= 3) {
      text << " survivors=[";
      for (std::size_t i = 0; i < rep.survivors.size(); ++i) text << (i ? "," : "") << rep.survivors[i];
      text << "]";
    }
    text << '\n';
    for (const auto& [n, v] : rep.exact_cases)
      if (m <= 3)
        for (const auto& e : v.evidence)
          text << "  n=" << n << " " << e.name << ": lhs " << interval_str(e.lhs) << " rhs " << interval_str(e.rhs)
               << (e.contradicted ? " contradicted" : " holds") << '\n';
    csv << m << ',' << (rep.prop1_ceiling ? std::to_string(*rep.prop1_ceiling) : "") << ','
        << (rep.max_survivor ? std::to_string(*rep.max_survivor) : "") << ',' << decimal(rep.dimension_bound) << ','
        << (rep.ok ? "true" : "false") << ',';
    csv << runs(rep.survivors) << '\n';
  }
  if (!a.out.empty()) {
    write_atomic(a.out, c.format == "csv" ? csv.str() : reports.dump(2) + "\n");
    man.artifact(a.out);
  }
  json result{{"reports", reports}};
  if (!band_log.empty()) result["band_search"] = band_log;
  std::string status;
  int code;
  if (found_tiling) {
    status = "tiling-found";
    code = kOk;
    text << "a band search found a tiling\n";
  } else if (!all_ok) {
    status = "bound-violated";
    code = kNone;
    text << "dimension bound violated for some m\n";
  } else if (!any_survivor) {
    status = "no-survivors";
    code = kNone;
    text << "no n >= 3 survives\n";
  } else if (unresolved) {
    status = "needs-search";
    code = kInconclusive;
    text << "survivors in the search band remain (use --search-band on)\n";
  } else {
    status = "holds";
    code = kOk;
    text << "bound holds for every m in range\n";
  }
  return emit(c, man, status, result, c.format == "csv" ? csv.str() : text.str(), code);
}

// ---------------------------------------------------------------- nagell / techlem

int cmd_nagell(const Common& c, int limit) {
  Manifest man("nagell", json{{"limit", limit}});
  json arr = json::array();
  std::ostringstream text;
  for (const auto& [x, k] : screen::nagell_solutions(limit)) {
    arr.push_back(json{{"x", x.str()}, {"k", k}});
    text << "2^" << k << " - 7 = " << x << "^2\n";
  }
  return emit(c, man, "ok", json{{"limit", limit}, {"solutions", arr}}, text.str(), kOk);
}

int cmd_techlem(const Common& c, int s_lo, int s_hi) {
  Manifest man("techlem", json{{"s", std::to_string(s_lo) + ".." + std::to_string(s_hi)}});
  json arr = json::array();
  std::ostringstream text;
  bool agree = true;
  for (int s = s_lo; s <= s_hi; ++s) {
    std::vector<int> x;
    const auto closed = screen::techlem_max(s);
    const auto brute = screen::techlem_bruteforce(s, &x);
    agree = agree && closed == brute;
    arr.push_back(json{{"s", s}, {"closed_form", closed}, {"brute_force", brute}, {"argmax", x}});
    text << "s=" << s << " closed=" << closed << " brute=" << brute << (closed == brute ? "" : "  MISMATCH") << '\n';
  }
  return emit(c, man, agree ? "holds" : "refuted", json{{"rows", arr}, {"agree", agree}}, text.str(), agree ? kOk : kNone);
}

// "--M -1..2" would look like a short option to the parser; glue it.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string s = argv[i];
    if ((s == "--M" || s == "--magnitudes") && i + 1 < argc) {
      out.push_back(s + "=" + argv[++i]);
      continue;
    }
    out.push_back(std::move(s));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice tilings by limited-magnitude error balls: search, verification and screening", "ltile"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json_out, "emit JSON")->envname("LTILE_JSON");
    sub->add_option("--format", common.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->envname("LTILE_FORMAT");
    sub->add_option("--manifest", common.manifest_path, "write the run manifest here")->envname("LTILE_MANIFEST");
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 256u))->envname("LTILE_THREADS");
  };

  BallArgs ball_args;
  auto* ball = app.add_subcommand("ball", "size (and optionally the points) of an error ball");
  add_common(ball);
  ball->add_option("--ball", ball_args.ball, "n,t,k+,k-")->envname("LTILE_BALL");
  ball->add_option("--m", ball_args.m, "shorthand: k+=m, k-=m-1, t=2")->envname("LTILE_M");
  ball->add_option("--n", ball_args.n, "dimension for --m")->envname("LTILE_N");
  ball->add_flag("--enumerate", ball_args.enumerate, "list the points")->envname("LTILE_ENUMERATE");
  ball->add_option("--cap", ball_args.cap, "refuse to enumerate more points than this")->envname("LTILE_CAP");

  int tau_m = 0;
  std::optional<long long> tau_x;
  auto* tau_cmd = app.add_subcommand("tau", "tau(x) for M = [-(m-1), m]*");
  add_common(tau_cmd);
  tau_cmd->add_option("--m", tau_m, "m >= 2")->required()->envname("LTILE_M");
  tau_cmd->add_option("--x", tau_x, "single x (default: whole support)")->envname("LTILE_X");

  std::uint64_t groups_order = 0;
  auto* groups = app.add_subcommand("groups", "all Abelian groups of a given order");
  add_common(groups);
  groups->add_option("--order", groups_order, "group order")->required()->check(CLI::PositiveNumber)->envname("LTILE_ORDER");

  SearchArgs sa;
  auto* srch = app.add_subcommand("search", "exhaustive splitter-set search");
  add_common(srch);
  srch->add_option("--group", sa.group, "group literal, e.g. Z4xZ2xZ9")->envname("LTILE_GROUP");
  srch->add_option("--order", sa.order, "search every group of this order")->envname("LTILE_ORDER");
  srch->add_option("--M,--magnitudes", sa.M, "magnitudes -k-..k+")->envname("LTILE_MAGNITUDES");
  srch->add_option("--m", sa.m, "shorthand: M=-(m-1)..m, t=2")->envname("LTILE_M");
  srch->add_option("--t", sa.t, "weight bound")->envname("LTILE_T");
  srch->add_option("--n", sa.n, "number of splitter elements")->envname("LTILE_N");
  srch->add_flag("--all", sa.all, "collect every solution instead of the first")->envname("LTILE_ALL");
  srch->add_option("--symmetry", sa.symmetry, "units or none")->envname("LTILE_SYMMETRY");
  srch->add_flag("--no-structural", sa.no_structural, "skip group-level necessary conditions")->envname("LTILE_NO_STRUCTURAL");
  srch->add_option("--cap-nodes", sa.cap_nodes, "node budget (0 = unlimited)")->envname("LTILE_CAP_NODES");
  srch->add_option("--checkpoint", sa.checkpoint, "resumable checkpoint file")->envname("LTILE_CHECKPOINT");
  srch->add_option("--out", sa.out, "write the first certificate here")->envname("LTILE_OUT");
  srch->add_option("--stop-after-units", sa.stop_after_units, "stop after this many work units (testing)")->envname("LTILE_STOP_AFTER_UNITS");

  LatticeArgs va;
  auto* verify = app.add_subcommand("verify", "verify a certificate or a lattice tiling");
  add_common(verify);
  verify->add_option("--cert", va.cert, "certificate file")->envname("LTILE_CERT");
  verify->add_option("--lattice", va.lattice, "lattice file")->envname("LTILE_LATTICE");
  verify->add_option("--ball", va.ball, "n,t,k+,k- (with --lattice)")->envname("LTILE_BALL");
  verify->add_option("--radius", va.radius, "box radius for the geometric check")->envname("LTILE_RADIUS");
  verify->add_option("--geom-cap", va.geom_cap, "largest n for the geometric check")->envname("LTILE_GEOM_CAP");

  LatticeArgs ba;
  auto* bridge = app.add_subcommand("bridge", "certificate -> lattice or lattice -> certificate");
  add_common(bridge);
  bridge->add_option("--cert", ba.cert, "certificate file (to lattice)")->envname("LTILE_CERT");
  bridge->add_option("--lattice", ba.lattice, "lattice file (to certificate)")->envname("LTILE_LATTICE");
  bridge->add_option("--ball", ba.ball, "n,t,k+,k- (with --lattice)")->envname("LTILE_BALL");
  bridge->add_option("--out", ba.out, "output file")->envname("LTILE_OUT");

  ScreenArgs sc;
  auto* scr = app.add_subcommand("screen", "non-existence screening over a range of m");
  add_common(scr);
  scr->add_option("--m", sc.m_range, "m or lo..hi")->required()->envname("LTILE_M");
  scr->add_option("--out", sc.out, "report file (JSON, or CSV with --format csv)")->envname("LTILE_OUT");
  scr->add_option("--search-band", sc.search_band,
                  "exhaustive search of the m = 2, 3 band: auto (m = 2 only), on, off")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->envname("LTILE_SEARCH_BAND");
  scr->add_option("--cap-nodes", sc.cap_nodes, "node budget per band search (0 = unlimited)")->envname("LTILE_CAP_NODES");

  int nagell_limit = 60;
  auto* nag = app.add_subcommand("nagell", "solutions of 2^k - 7 = x^2");
  add_common(nag);
  nag->add_option("--limit", nagell_limit, "largest k")->envname("LTILE_LIMIT");

  std::string tech_range = "2..12";
  auto* tech = app.add_subcommand("techlem", "closed form vs brute force of the integer optimization");
  add_common(tech);
  tech->add_option("--s", tech_range, "s or lo..hi")->envname("LTILE_S");

  try {
    app.parse(normalize_args(argc, argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*ball) return cmd_ball(common, ball_args);
    if (*tau_cmd) return cmd_tau(common, tau_m, tau_x);
    if (*groups) return cmd_groups(common, groups_order);
    if (*srch) return cmd_search(common, sa);
    if (*verify) return cmd_verify(common, va);
    if (*bridge) return cmd_bridge(common, ba);
    if (*scr) return cmd_screen(common, sc);
    if (*nag) return cmd_nagell(common, nagell_limit);
    if (*tech) {
      const auto [lo, hi] = parse_range(tech_range);
      if (lo < 2) throw UsageError("--s must be >= 2");
      return cmd_techlem(common, static_cast<int>(lo), static_cast<int>(hi));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInconclusive;
  }
  return kUsage;
}
