// utn: command-line front end for compatible structures on UT_n(K).
//
// Exit codes: 0 success, 1 a computed value disagrees with its closed-form
// expectation, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "utn/utn.hpp"

namespace {

using namespace utn;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

constexpr int kDefaultMaxN = 6;
constexpr int kHardMaxN = 8;

enum class Format { Text, Csv, Json };

struct RunConfig {
  int n = 3;
  std::string field_text = "Q";
  std::string kind_text = "id";
  std::string format_text = "text";
  std::uint64_t seed = 0;
  int max_n = kDefaultMaxN;
  std::string out;

  FieldSpec field = FieldSpec::rationals();
  IdentityKind kind = IdentityKind::MatchId;
  Format format = Format::Text;
};

/// Header plus rows, rendered as aligned text or CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string text() const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        os << cells[c];
        if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
      }
      os << "\n";
    };
    line(header);
    for (const auto& row : rows) line(row);
    return os.str();
  }

  std::string csv() const {
    std::string out = csv_row(header);
    for (const auto& row : rows) out += csv_row(row);
    return out;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const RunConfig& cfg, const Json& json, const Table& table, const std::string& summary) {
  Output out(cfg.out);
  switch (cfg.format) {
    case Format::Json: out.stream() << json.dump(2) << "\n"; break;
    case Format::Csv: out.stream() << table.csv(); break;
    case Format::Text: out.stream() << table.text() << summary; break;
  }
}

Product read_product(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read product file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return product_from_string(buffer.str());
}

/// Products are always written as JSON so they can be fed back in.
void write_product(const RunConfig& cfg, const Product& p) {
  Output out(cfg.out);
  out.stream() << product_to_string(p) << "\n";
}

void require_n(const RunConfig& cfg) {
  if (cfg.n < 3) throw UsageError("--n must be at least 3");
  if (cfg.n > cfg.max_n)
    throw UsageError("--n " + std::to_string(cfg.n) + " exceeds the cap --max-n " + std::to_string(cfg.max_n));
}

void require_family_kind(const RunConfig& cfg) {
  if (cfg.kind == IdentityKind::Compatible) throw UsageError("no product families exist for --kind compat");
}

std::string verdict(bool ok) { return ok ? "pass" : "FAIL"; }

// --- dim -------------------------------------------------------------------

int cmd_dim(const RunConfig& cfg) {
  Table table{{"kind", "n", "field", "dimension", "expected", "status"}, {}};
  Json rows = Json::array();
  bool all_ok = true;
  for (int n = 3; n <= cfg.max_n; ++n) {
    Dimension dim(n);
    for (IdentityKind kind : kAllKinds) {
      std::size_t d = dimension(kind, dim, cfg.field);
      std::optional<std::size_t> expected;
      if (kind != IdentityKind::Compatible) expected = expected_count(kind, dim);
      std::string status = !expected ? "computed" : (*expected == d ? "ok" : "MISMATCH");
      if (expected && *expected != d) all_ok = false;
      table.rows.push_back({kind_token(kind), std::to_string(n), cfg.field.to_string(), std::to_string(d),
                            expected ? std::to_string(*expected) : "-", status});
      rows.push_back({{"kind", kind_token(kind)},
                      {"n", n},
                      {"field", cfg.field.to_string()},
                      {"dimension", d},
                      {"expected", expected ? Json(*expected) : Json(nullptr)},
                      {"status", status}});
    }
  }
  emit(cfg, {{"rows", rows}, {"status", verdict(all_ok)}}, table,
       all_ok ? "all closed-form counts match\n" : "closed-form count mismatch\n");
  return all_ok ? kOk : kMismatch;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
  require_n(cfg);
  require_family_kind(cfg);
  Dimension dim(cfg.n);
  std::vector<FamilyId> ids = family_ids(cfg.kind, dim);
  std::vector<Product> fams;
  for (const FamilyId& id : ids) fams.push_back(make_family(id, dim, cfg.field));
  KernelBasis kb = kernel(cfg.kind, dim, cfg.field);

  Table table{{"family", "residual", "in_kernel"}, {}};
  std::size_t residual_failures = 0;
  std::size_t outside = 0;
  EchelonBasis span;
  for (std::size_t k = 0; k < fams.size(); ++k) {
    bool holds = satisfies(cfg.kind, fams[k]);
    bool member = membership(fams[k], kb).has_value();
    residual_failures += holds ? 0 : 1;
    outside += member ? 0 : 1;
    span.insert(fams[k].coordinates());
    table.rows.push_back({ids[k].to_string(), holds ? "empty" : "NONZERO", member ? "yes" : "NO"});
  }
  std::size_t kernel_outside = 0;
  for (const Product& p : kb.products) kernel_outside += span.reduce(p.coordinates()).empty() ? 0 : 1;

  std::size_t expected = expected_count(cfg.kind, dim);
  bool ok = residual_failures == 0 && outside == 0 && kernel_outside == 0 && span.rank() == fams.size() &&
            fams.size() == expected && kb.dimension() == expected;

  Json json = {{"kind", kind_token(cfg.kind)},
               {"n", cfg.n},
               {"field", cfg.field.to_string()},
               {"families", fams.size()},
               {"expected_count", expected},
               {"rank", span.rank()},
               {"kernel_dimension", kb.dimension()},
               {"residual_failures", residual_failures},
               {"families_outside_kernel", outside},
               {"kernel_vectors_outside_span", kernel_outside}};

  std::ostringstream summary;
  summary << "families " << fams.size() << " (expected " << expected << "), rank " << span.rank()
          << ", kernel dimension " << kb.dimension() << "\n"
          << "family residual failures " << residual_failures << ", families outside kernel " << outside
          << ", kernel vectors outside span " << kernel_outside << "\n";

  if (cfg.kind == IdentityKind::TotallyCompatible) {
    // Every combination of the totally compatible families is associative.
    std::mt19937_64 rng(cfg.seed);
    std::size_t bad = 0;
    constexpr std::size_t kSamples = 100;
    for (std::size_t s = 0; s < kSamples; ++s) {
      Product combo(dim, cfg.field);
      for (const Product& p : fams) combo = combo + random_scalar(rng, cfg.field) * p;
      if (!is_associative(combo).associative || !satisfies(cfg.kind, combo)) ++bad;
    }
    ok = ok && bad == 0;
    json["random_combinations"] = {{"samples", kSamples}, {"failures", bad}, {"seed", cfg.seed}};
    summary << "random combinations (seed " << cfg.seed << "): " << kSamples - bad << "/" << kSamples
            << " associative with empty residual\n";
  }
  json["status"] = verdict(ok);
  summary << verdict(ok) << "\n";
  emit(cfg, json, table, summary.str());
  return ok ? kOk : kMismatch;
}

// --- check -----------------------------------------------------------------

int cmd_check(const RunConfig& cfg, const std::string& path) {
  Product p = read_product(path);
  constexpr std::size_t kShown = 3;
  Table table{{"check", "result", "first_counterexamples"}, {}};
  Json kinds = Json::object();
  for (IdentityKind kind : kAllKinds) {
    ResidualReport r = residual(kind, p, kShown);
    std::string shown;
    Json examples = Json::array();
    for (const auto& e : r.entries) {
      shown += (shown.empty() ? "" : "; ") + e.triple.to_string() + " " + e.tag + ": " + e.value.to_string();
      examples.push_back({{"triple", e.triple.to_string()}, {"equation", e.tag}, {"value", element_to_json(e.value)}});
    }
    table.rows.push_back({kind_token(kind), r.holds() ? "pass" : "fail", shown});
    kinds[kind_token(kind)] = {{"holds", r.holds()}, {"counterexamples", examples}};
  }
  AssociativityReport a = is_associative(p);
  std::string failure = a.associative ? "" : a.first_failure->to_string() + " = " + a.failing_value->to_string();
  table.rows.push_back({"associative", a.associative ? "pass" : "fail", failure});
  Json json = {{"n", p.dim().n()}, {"field", p.field().to_string()}, {"identities", kinds}};
  json["associative"] = {{"holds", a.associative}};
  if (!a.associative)
    json["associative"]["first_failure"] = {{"triple", a.first_failure->to_string()},
                                            {"value", element_to_json(*a.failing_value)}};
  emit(cfg, json, table, "");
  return kOk;
}

// --- classify3 -------------------------------------------------------------

int cmd_classify3(const RunConfig& cfg, const std::string& path) {
  Product p = read_product(path);
  auto reject = [&](const std::string& why) {
    if (cfg.format == Format::Json)
      std::cout << Json{{"error", why}, {"kind", kind_token(cfg.kind)}}.dump() << "\n";
    else
      std::cerr << "error: " << why << "\n";
    return kUsage;
  };
  if (p.dim().n() != 3) return reject("classification needs a product on UT_3");
  LambdaForm form = kind_form(cfg.kind);
  ResidualReport r = residual(cfg.kind, p, 1);
  if (!r.holds())
    return reject("product does not satisfy the " + kind_name(cfg.kind) + " identity: " +
                  r.entries.front().triple.to_string() + " " + r.entries.front().tag + " leaves " +
                  r.entries.front().value.to_string());
  CanonicalResult result;
  try {
    result = canonical_form(product_to_lambda(p, form));
  } catch (const PreconditionError& e) {
    return reject(e.what());
  }
  Json json = classification_to_json(result);
  Table table{{"kind", "case", "params", "witness"}, {}};
  std::string params;
  for (const Scalar& s : result.cls.params) params += (params.empty() ? "" : ";") + s.to_string();
  table.rows.push_back({kind_token(result.cls.kind), std::to_string(result.cls.case_tag), params,
                        result.witness.to_string()});
  emit(cfg, json, table, "");
  return kOk;
}

// --- orbits ----------------------------------------------------------------

int cmd_orbits(const RunConfig& cfg) {
  if (!cfg.field.is_prime()) throw UsageError("orbits needs --field Fp:<q> with q in {2,3,5}");
  if (cfg.n != 3) throw UsageError("orbits works on UT_3 only");
  std::uint32_t q = cfg.field.modulus();
  OrbitCensus census = orbit_census(cfg.kind, q);  // validates kind and q

  Table table{{"kind", "q", "case", "params", "orbit_size"}, {}};
  Json orbits = Json::array();
  for (const OrbitRecord& o : census.orbits) {
    std::string params;
    Json plist = Json::array();
    for (const Scalar& s : o.label.params) {
      params += (params.empty() ? "" : ";") + s.to_string();
      plist.push_back(s.to_string());
    }
    table.rows.push_back({kind_token(cfg.kind), std::to_string(q), std::to_string(o.label.case_tag), params,
                          std::to_string(o.size)});
    Json rep = Json::array();
    for (const Scalar& s : o.representative.values()) rep.push_back(s.to_string());
    orbits.push_back({{"case", o.label.case_tag}, {"params", plist}, {"orbit_size", o.size}, {"lambda", rep}});
  }
  // Interchangeable: associative exactly when lambda_5 = lambda_6 = 0.
  std::optional<std::size_t> expected_assoc;
  if (cfg.kind == IdentityKind::Interchangeable) expected_assoc = static_cast<std::size_t>(q) * q * q * q;
  bool ok = census.bijective() && (!expected_assoc || *expected_assoc == census.associative);

  Json json = {{"kind", kind_token(cfg.kind)},
               {"q", q},
               {"enumerated", census.enumerated},
               {"associative", census.associative},
               {"expected_associative", expected_assoc ? Json(*expected_assoc) : Json(nullptr)},
               {"orbits", orbits},
               {"orbit_count", census.orbits.size()},
               {"violations", census.violations},
               {"status", verdict(ok)}};
  std::ostringstream summary;
  summary << "enumerated " << census.enumerated << ", associative " << census.associative;
  if (expected_assoc) summary << " (expected " << *expected_assoc << ")";
  summary << ", orbits " << census.orbits.size() << ", labels "
          << (census.bijective() ? "in bijection with orbits" : "NOT in bijection with orbits") << "\n";
  for (const std::string& v : census.violations) summary << "  " << v << "\n";
  emit(cfg, json, table, summary.str());
  if (cfg.format == Format::Csv && !ok) std::cerr << summary.str();
  return ok ? kOk : kMismatch;
}

// --- kernel / family / transform --------------------------------------------

int cmd_kernel(const RunConfig& cfg) {
  require_n(cfg);
  KernelBasis kb = kernel(cfg.kind, Dimension(cfg.n), cfg.field);
  Output out(cfg.out);
  if (cfg.format == Format::Text) {
    out.stream() << kind_name(cfg.kind) << " on UT_" << cfg.n << " over " << cfg.field.to_string() << ": dimension "
                 << kb.dimension() << "\n";
    for (const Product& p : kb.products) out.stream() << p.to_string() << "\n";
  } else {
    out.stream() << kernel_to_json(kb).dump() << "\n";
  }
  return kOk;
}

int cmd_family(const RunConfig& cfg, const std::string& name) {
  require_n(cfg);
  write_product(cfg, make_family(FamilyId::parse(name), Dimension(cfg.n), cfg.field));
  return kOk;
}

std::vector<Scalar> parse_scalar_list(const std::string& text, FieldSpec field) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item, field));
  return out;
}

int cmd_transform(const RunConfig& cfg, const std::string& path, const std::string& aut, bool involution) {
  Product p = read_product(path);
  if (aut.empty() == !involution) throw UsageError("transform needs exactly one of --aut or --involution");
  if (involution) {
    write_product(cfg, opposite_pushforward(p, involution_map(p.dim(), p.field())));
    return kOk;
  }
  if (p.dim().n() != 3) throw UsageError("--aut acts on UT_3 only");
  std::vector<Scalar> a = parse_scalar_list(aut, p.field());
  if (a.size() != 4) throw UsageError("--aut expects a11,a22,a31,a32");
  write_product(cfg, pushforward(p, aut3_map({a[0], a[1], a[2], a[3]})));
  return kOk;
}

void finalize(RunConfig& cfg) {
  if (cfg.max_n < 3 || cfg.max_n > kHardMaxN)
    throw UsageError("--max-n must lie in [3, " + std::to_string(kHardMaxN) + "]");
  if (cfg.max_n > kDefaultMaxN)
    std::cerr << "warning: --max-n " << cfg.max_n << " above " << kDefaultMaxN << " makes kernel computations slow\n";
  cfg.field = FieldSpec::parse(cfg.field_text);
  cfg.kind = parse_kind(cfg.kind_text);
  static const std::map<std::string, Format> formats = {{"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};
  auto it = formats.find(cfg.format_text);
  if (it == formats.end()) throw UsageError("--format must be text, csv or json");
  cfg.format = it->second;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact computations with compatible products on UT_n(K)"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n", cfg.n, "matrix size n (default 3)");
  app.add_option("--field", cfg.field_text, "Q or Fp:<p> (default Q)");
  app.add_option("--kind", cfg.kind_text, "id | 12 | inter | total | compat (default id)");
  app.add_option("--format", cfg.format_text, "text | csv | json (default text)");
  app.add_option("--seed", cfg.seed, "seed for randomized checks (default 0)");
  app.add_option("--max-n", cfg.max_n, "largest n for kernel computations (default 6, at most 8)");
  app.add_option("--out", cfg.out, "write the report to this file instead of stdout");

  std::string file, family, aut;
  bool involution = false;
  auto* dim = app.add_subcommand("dim", "kernel dimensions for n = 3..max-n, every kind");
  auto* verify = app.add_subcommand("verify", "check that the families span the solution space of --kind");
  auto* check = app.add_subcommand("check", "residuals of every identity and associativity of a product file");
  check->add_option("product", file, "product JSON file")->required();
  auto* classify = app.add_subcommand("classify3", "normal form of an associative product on UT_3");
  classify->add_option("product", file, "product JSON file")->required();
  auto* orbits = app.add_subcommand("orbits", "exhaustive orbit census over F_q, q in {2,3,5}");
  auto* kern = app.add_subcommand("kernel", "export the reduced-echelon solution basis");
  auto* fam = app.add_subcommand("family", "emit a family product, e.g. Mid1[2,1] or T2");
  fam->add_option("name", family, "family name")->required();
  auto* transform = app.add_subcommand("transform", "push a product along an automorphism or the involution");
  transform->add_option("product", file, "product JSON file")->required();
  transform->add_option("--aut", aut, "a11,a22,a31,a32 (UT_3 automorphism)");
  transform->add_flag("--involution", involution, "opposite pushforward along e_ij -> e_{n-j+1,n-i+1}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    finalize(cfg);
    if (dim->parsed()) return cmd_dim(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (check->parsed()) return cmd_check(cfg, file);
    if (classify->parsed()) return cmd_classify3(cfg, file);
    if (orbits->parsed()) return cmd_orbits(cfg);
    if (kern->parsed()) return cmd_kernel(cfg);
    if (fam->parsed()) return cmd_family(cfg, family);
    if (transform->parsed()) return cmd_transform(cfg, file, aut, involution);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DivisionByZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
