#include "brauer/acceptance.hpp"
#include "brauer/curve_file.hpp"
#include "brauer/isogeny.hpp"
#include "brauer/parity.hpp"
#include "brauer/regconst.hpp"
#include "brauer/structured.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

using namespace brauer;

namespace {

constexpr int kOk = 0;
constexpr int kRefused = 1;
constexpr int kInputError = 2;

struct Options {
  bool structured = false;
  unsigned seed = 20261019;
  std::string command;
  std::vector<std::string> args;  // echoed into the run record
};

// Preset name ("S3", "A5", "C5", "D2n:5", "Borel:7") or generators in cycle
// notation separated by ';', e.g. "(0 1 2);(0 1)".
Group parse_group(const std::string& spec) {
  if (spec.find('(') == std::string::npos) return presets::by_name(spec);
  int degree = 0;
  const std::regex number("[0-9]+");
  for (auto it = std::sregex_iterator(spec.begin(), spec.end(), number); it != std::sregex_iterator(); ++it)
    degree = std::max(degree, std::stoi(it->str()) + 1);
  std::vector<Perm> gens;
  std::stringstream in(spec);
  std::string part;
  while (std::getline(in, part, ';')) gens.push_back(parse_cycles(part, degree));
  return Group::from_generators(gens, spec);
}

std::string sign(int w) { return w == 1 ? "+1" : "-1"; }
std::string parity_word(int p) { return p ? "odd" : "even"; }

void emit(const Options& o, std::vector<Record> records) {
  Record run{"run", {{"command", o.command}, {"seed", std::to_string(o.seed)}}};
  for (const auto& a : o.args) run.add("arg", a);
  records.insert(records.begin(), run);
  std::cout << write_records(records);
}

void print_verdict(const ParityVerdict& v) {
  std::cout << "verdict: " << v.combination << " is " << parity_word(v.parity) << "  [evidence: " << to_string(v.evidence)
            << "]\n";
  for (const auto& a : v.assumptions) std::cout << "  assuming " << a << "\n";
  for (const auto& n : v.notes) std::cout << "  note: " << n << "\n";
}

void print_places(const std::vector<PlaceContribution>& places, int p, bool with_case) {
  std::cout << std::left << std::setw(8) << "place";
  if (with_case) std::cout << std::setw(6) << "case";
  const std::string ord = "ord_" + std::to_string(p) + " quotient";
  if (with_case) std::cout << std::setw(16) << ord << "w(K)w(M)w(L)";
  else std::cout << ord;
  std::cout << "\n";
  for (const auto& pc : places) {
    std::cout << std::setw(8) << pc.place;
    if (with_case) std::cout << std::setw(6) << pc.label;
    if (with_case) std::cout << std::setw(16) << pc.ord_quotient << (pc.root_product ? sign(*pc.root_product) : "n/a");
    else std::cout << pc.ord_quotient;
    std::cout << "\n";
  }
}

Record places_record(const std::vector<PlaceContribution>& places) {
  Record r{"places", {}};
  for (const auto& pc : places)
    r.add("place", pc.place + " case=" + pc.label + " ord=" + std::to_string(pc.ord_quotient) +
                       " w=" + (pc.root_product ? sign(*pc.root_product) : "n/a"));
  return r;
}

int cmd_relations(const Options& o, const std::string& spec) {
  const Group g = parse_group(spec);
  const ZMatrix lattice = relation_lattice(g);
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < lattice.rows(); ++i) {
    RelationVector v(lattice.cols());
    for (std::size_t j = 0; j < lattice.cols(); ++j) v[j] = lattice(i, j).get_si();
    rows.push_back(render_relation(g, v));
  }
  if (o.structured) {
    Record r{"relations", {{"group", g.name()}, {"rank", std::to_string(rows.size())}}};
    for (const auto& s : rows) r.add("relation", s);
    emit(o, {r});
    return kOk;
  }
  std::cout << "group " << g.name() << ", order " << g.order() << "\nsubgroup classes:";
  for (const auto& c : g.subgroup_classes()) std::cout << " " << c.label;
  std::cout << "\nlattice rank " << rows.size() << "\n";
  for (const auto& s : rows) std::cout << "  " << s << "\n";
  return kOk;
}

int cmd_regconst(const Options& o, const std::string& spec, bool lattice, const std::vector<std::string>& extra) {
  const Group g = parse_group(spec);
  auto rels = standard_relations(g);
  for (const auto& text : extra) {
    const auto v = parse_relation(g, text);
    if (!is_relation(g, v)) throw std::invalid_argument("'" + text + "' is not a relation");
    rels.push_back({render_relation(g, v), v});
  }
  const bool include_lattice = lattice || rels.empty();
  const auto table = regconst_table(g, rels, include_lattice);
  const auto summary = summarize(table);
  const auto combos = computable_combinations(table);
  bool two = false;
  for (const auto& c : combos) two = two || c.prime == 2;
  const std::string disclaimer = "classes at the prime 2 assume principally polarized abelian varieties";
  if (o.structured) {
    Record r = to_record(summary);
    for (const auto& c : combos)
      for (const auto& s : c.rendered) r.add("combination", c.prime.get_str() + ": " + s);
    if (two) r.add("disclaimer", disclaimer);
    emit(o, {r});
    return kOk;
  }
  std::cout << "regulator constants for " << g.name() << "\nrelation :";
  for (const auto& l : summary.irreducibles) std::cout << " " << l;
  std::cout << "\n";
  for (std::size_t i = 0; i < summary.relations.size(); ++i) {
    std::cout << summary.relations[i] << " :";
    for (const auto& e : summary.entries[i]) std::cout << " " << e;
    std::cout << "\n";
  }
  for (const auto& c : combos) {
    std::cout << "parity of";
    for (std::size_t i = 0; i < c.rendered.size(); ++i) std::cout << (i ? ", " : " ") << c.rendered[i];
    std::cout << " determined at " << c.prime << "\n";
  }
  if (two) std::cout << "note: " << disclaimer << "\n";
  return kOk;
}

int cmd_parity(const Options& o, const std::string& family, int p, const std::string& curve_path,
               std::optional<long> m, std::optional<long> rank_k, std::optional<long> rank_m) {
  const CurveData curve = load_curve(curve_path);
  if (!rank_k) rank_k = curve.rank_k;
  if (!rank_m) rank_m = curve.rank_m;
  TowerFamily fam;
  if (family == "borel") fam = TowerFamily::borel;
  else if (family == "s3") fam = TowerFamily::s3;
  else throw std::invalid_argument("--tower must be borel or s3 (use the dihedral and falsetate commands)");
  if (fam == TowerFamily::s3 && p != 3) throw std::invalid_argument("the s3 tower has p = 3");
  TowerDescription tower;
  if (m) {
    tower = kummer_tower(curve.places, p, *m);
    if (fam == TowerFamily::s3) {
      const std::string d = tower.description;
      tower = make_tower(TowerFamily::s3, 3, tower.group, tower.places);
      tower.description = d;
    }
  } else {
    tower = tower_from_curve(curve, fam, p);
  }
  BorelReport report;
  std::optional<ParityVerdict> selmer;
  if (fam == TowerFamily::s3) {
    const auto s = s3_theorem_parity(tower);
    report = s.borel;
    selmer = s.selmer_combination;
  } else {
    report = borel_parity(tower, p, {rank_k, rank_m});
  }
  if (o.structured) {
    std::vector<Record> out = {to_record(report.verdict), places_record(report.places)};
    out.back().add("tamagawa_class", report.tamagawa_class.representative().get_str());
    if (report.rank_over_l) out.push_back(to_record(*report.rank_over_l));
    if (selmer) out.push_back(to_record(*selmer));
    emit(o, out);
    return kOk;
  }
  std::cout << "tower " << (tower.description.empty() ? to_string(fam) : tower.description) << ", curve "
            << (curve.name.empty() ? curve_path : curve.name) << "\n";
  print_places(report.places, p, true);
  std::cout << "Tamagawa quotient class: " << report.tamagawa_class.representative() << "\n";
  print_verdict(report.verdict);
  if (report.rank_over_l) print_verdict(*report.rank_over_l);
  if (selmer) print_verdict(*selmer);
  return kOk;
}

int cmd_falsetate(const Options& o, int p, long m, int n, const std::string& curve_path, std::optional<long> rank_k) {
  const CurveData curve = load_curve(curve_path);
  if (!rank_k) rank_k = curve.rank_k;
  const auto ladder = false_tate_ladder(curve.places, p, m, n, rank_k);
  if (o.structured) {
    std::vector<Record> out;
    for (const auto& l : ladder) {
      Record r{"layer", {{"n", std::to_string(l.n)}, {"w_l", sign(l.w_l)}, {"w_f", sign(l.w_f)},
                         {"bound_l", std::to_string(l.bound_l)}, {"bound_f", l.bound_f.get_str()}}};
      out.push_back(r);
      out.push_back(to_record(l.verdict_l));
      out.push_back(to_record(l.verdict_f));
    }
    emit(o, out);
    return kOk;
  }
  std::cout << "false Tate ladder over Q(mu_" << p << "^n, " << m << "^(1/" << p << "^n)), curve "
            << (curve.name.empty() ? curve_path : curve.name) << "\n";
  std::cout << std::left << std::setw(4) << "n" << std::setw(9) << "w(L_n)" << std::setw(9) << "w(F_n)"
            << std::setw(12) << "rk(L_n) >=" << "rk(F_n) >=\n";
  for (const auto& l : ladder)
    std::cout << std::setw(4) << l.n << std::setw(9) << sign(l.w_l) << std::setw(9) << sign(l.w_f) << std::setw(12)
              << l.bound_l << l.bound_f << "\n";
  if (!ladder.empty())
    for (const auto& a : ladder.front().verdict_l.assumptions) std::cout << "assuming " << a << "\n";
  return kOk;
}

int cmd_dihedral(const Options& o, int p, const std::string& curve_path, std::optional<int> rank_m_parity) {
  const CurveData curve = load_curve(curve_path);
  const auto tower = tower_from_curve(curve, TowerFamily::dihedral, p);
  const auto r = dihedral_parity(tower, p, rank_m_parity);
  if (o.structured) {
    std::vector<Record> out = {to_record(r.verdict), places_record(r.places)};
    if (r.s1) out.back().add("s1", std::to_string(*r.s1));
    if (r.s2) out.back().add("s2", std::to_string(*r.s2));
    emit(o, out);
    return kOk;
  }
  std::cout << "dihedral D" << 2 * p << " tower, curve " << (curve.name.empty() ? curve_path : curve.name) << "\n";
  print_places(r.places, p, false);
  if (r.s1) std::cout << "|S1| = " << *r.s1 << ", |S2| = " << *r.s2 << "\n";
  print_verdict(r.verdict);
  return kOk;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int cmd_isogeny(const Options& o, const std::string& family, int p, bool print_matrix) {
  Record rec{"isogeny", {{"family", family}, {"p", std::to_string(p)}}};
  std::ostringstream text;
  std::optional<QParityExpression> q;
  std::string refusal;
  const IntegerGModuleMap* f = nullptr;
  BorelIsogeny b;
  DihedralIsogeny d;
  if (family == "borel") {
    b = build_borel_f(p);
    f = &b.f;
    const Integer det = abs(b.f.determinant());
    text << "Borel(" << p << "): f is a " << b.f.matrix.rows() << "x" << b.f.matrix.cols() << " matrix\n";
    text << "|det f| = " << det << "\n";
    text << "closed form (p^2-p+1) p^(p(p-1)/2-1) = " << b.closed_form_det << ": " << yes(det == b.closed_form_det)
         << "\n";
    text << "f^t f blocks alpha1 + alpha2: " << yes(b.blocks_match) << "\n";
    text << "alpha3 (alpha2 + [p]) = ([p] + id) alpha4: " << yes(b.factorization_holds) << "\n";
    rec.add("det", det.get_str());
    rec.add("closed_form", b.closed_form_det.get_str());
    rec.add("blocks_match", yes(b.blocks_match));
    rec.add("factorization_holds", yes(b.factorization_holds));
    if (p == 3) {
      const bool match = b.f.matrix == printed_borel_f3() && b.ftf.matrix == printed_borel_ftf3();
      text << "matches printed matrix: " << yes(match) << "\n";
      rec.add("matches_printed", yes(match));
    }
  } else if (family == "dihedral") {
    d = build_dihedral_maps(p);
    f = &d.f;
    Integer expect = Integer(1) << (p - 1);
    expect *= p * p * p;
    const Integer det = determinant(d.alpha2);
    text << "D" << 2 * p << ": |det f| = " << abs(d.f.determinant()) << "\n";
    text << "det alpha2 = " << det << ", 2^(n-1) n^3 = " << expect << ": " << yes(det == expect) << "\n";
    text << "f^t f blocks: " << yes(d.blocks_match) << "\n";
    rec.add("det_alpha2", det.get_str());
    rec.add("expected", expect.get_str());
    rec.add("blocks_match", yes(d.blocks_match));
  } else {
    throw std::invalid_argument("--family must be borel or dihedral");
  }
  if (is_prime(Integer(p))) {
    try {
      q = q_parity(*f, p);
      text << "q_parity: " << q->render() << "\n";
      rec.add("q_parity", q->render());
    } catch (const GateFailure& e) {
      refusal = e.what();
    }
  }
  if (print_matrix) text << "f =\n" << f->matrix << "f^t f =\n" << compose_transpose(*f).matrix;
  if (o.structured) {
    if (!refusal.empty()) rec.add("refused", refusal);
    emit(o, {rec});
  } else {
    std::cout << text.str();
    if (!refusal.empty()) std::cerr << "q_parity refused: " << refusal << "\n";
  }
  return refusal.empty() ? kOk : kRefused;
}

int cmd_selftest(const Options& o) {
  bool all = true;
  std::vector<Record> out;
  for (int id = 1; id <= 10; ++id) {
    const auto r = run_criterion(id, o.seed);
    all = all && r.passed;
    if (o.structured)
      out.push_back(Record{"criterion",
                           {{"id", std::to_string(r.id)}, {"title", r.title}, {"status", r.passed ? "pass" : "fail"},
                            {"detail", r.detail}}});
    else
      std::cout << format_result(r) << std::endl;
  }
  if (o.structured) emit(o, out);
  return all ? kOk : kRefused;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brauer relations, regulator constants and rank parity predictions"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--structured", o.structured, "Print versioned key=value records instead of tables");
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();

  std::string group;
  bool lattice = false, print_matrix = false;
  std::vector<std::string> extra;
  std::string tower = "borel", curve, family = "borel";
  int p = 3, n = 3;
  std::optional<long> m, rank_k, rank_m;
  std::optional<int> rank_m_parity;

  auto* rel = app.add_subcommand("relations", "Basis of the lattice of relations between permutation representations");
  rel->add_option("group", group, "Preset (S3, A5, C5, D2n:5, Borel:7) or ';'-separated cycles")->required();

  auto* reg = app.add_subcommand("regconst", "Regulator constant table");
  reg->add_option("group", group, "Preset or ';'-separated cycles")->required();
  reg->add_flag("--lattice", lattice, "Include the computed lattice basis");
  reg->add_option("--relation", extra, "Additional relation, e.g. \"2S3+1-2C2-C3\"");

  auto* par = app.add_subcommand("parity", "Parity of rk(E/K)+rk(E/M)+rk(E/L) in a Borel or S3 tower");
  par->add_option("--tower", tower, "borel or s3")->capture_default_str();
  par->add_option("--p", p, "Odd prime")->capture_default_str();
  par->add_option("--curve", curve, "Curve data file")->required();
  par->add_option("--m", m, "Kummer generator: F = Q(mu_p, m^(1/p)); else per-place groups from the file");
  par->add_option("--rank-k", rank_k, "Known rank over K");
  par->add_option("--rank-m", rank_m, "Known rank over M");

  auto* ft = app.add_subcommand("falsetate", "Root numbers and Selmer bounds up the false Tate tower");
  ft->add_option("--p", p, "Odd prime")->capture_default_str();
  ft->add_option("--m", m, "Kummer generator")->required();
  ft->add_option("--n", n, "Number of layers")->capture_default_str();
  ft->add_option("--curve", curve, "Curve data file")->required();
  ft->add_option("--rank-k", rank_k, "Known Selmer rank over K");

  auto* dih = app.add_subcommand("dihedral", "Parity in a D_2p tower");
  dih->add_option("--p", p, "Odd prime")->capture_default_str();
  dih->add_option("--curve", curve, "Curve data file with decomposition and inertia words")->required();
  dih->add_option("--rank-m-parity", rank_m_parity, "Parity of the Selmer rank over M")->check(CLI::Range(0, 1));

  auto* iso = app.add_subcommand("isogeny-check", "Build the isogeny f and check its determinant identities");
  iso->add_option("--family", family, "borel or dihedral")->capture_default_str();
  iso->add_option("--p", p, "p for borel, n for dihedral")->capture_default_str();
  iso->add_flag("--print-matrix", print_matrix, "Print f and f^t f");

  auto* self = app.add_subcommand("selftest", "Run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  for (int i = 1; i < argc; ++i) o.args.emplace_back(argv[i]);
  o.command = app.get_subcommands().front()->get_name();
  try {
    if (*rel) return cmd_relations(o, group);
    if (*reg) return cmd_regconst(o, group, lattice, extra);
    if (*par) return cmd_parity(o, tower, p, curve, m, rank_k, rank_m);
    if (*ft) return cmd_falsetate(o, p, *m, n, curve, rank_k);
    if (*dih) return cmd_dihedral(o, p, curve, rank_m_parity);
    if (*iso) return cmd_isogeny(o, family, p, print_matrix);
    if (*self) return cmd_selftest(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const GateFailure& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const UnsupportedCase& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kRefused;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return kRefused;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return kRefused;
  } catch (const UndecidedIrreducibility& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const CapacityError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
