// svcnet: extract, analyze, and search semantic service interaction networks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svcnet/svcnet.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw svcnet::Error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw svcnet::Error("cannot write file: " + path.string());
  out << content;
}

svcnet::OntologyRegistry load_ontologies(const std::vector<std::string>& paths) {
  svcnet::OntologyRegistry onts;
  for (const std::string& p : paths) onts.add(svcnet::load_ontology(read_file(p)));
  return onts;
}

unsigned thread_count() {
  const char* env = std::getenv("SVCNET_THREADS");
  if (!env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  if (v == 0) return std::max(1u, std::thread::hardware_concurrency());
  return v < 1 ? 1u : static_cast<unsigned>(v);
}

std::vector<svcnet::ConceptRef> parse_concept_list(const std::string& csv) {
  std::vector<svcnet::ConceptRef> refs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) refs.push_back(svcnet::ConceptRef::parse(item));
  return refs;
}

std::map<std::string, std::string> load_domains_csv(const fs::path& path) {
  std::map<std::string, std::string> labels;
  std::istringstream in(read_file(path));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line == "node,domain") {
      first = false;
      continue;
    }
    first = false;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw svcnet::ParseError("domains file " + path.string() + ": expected node,domain lines");
    labels[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return labels;
}

struct ExtractArgs {
  std::string collection, network = "operation", match = "exact", invocation = "full",
              format = "tsv", out;
  std::vector<std::string> ontologies;
  bool allow_vacuous = false;
};

int cmd_extract(const ExtractArgs& args, bool match_given, bool invocation_given) {
  const auto onts = load_ontologies(args.ontologies);
  const auto coll = svcnet::load_collection(read_file(args.collection));
  coll.validate_against(onts);

  svcnet::InteractionNetwork net;
  if (args.network == "operation") {
    svcnet::BuildOptions opt;
    opt.allow_vacuous = args.allow_vacuous;
    opt.threads = thread_count();
    net = svcnet::build_operation_network(coll, onts, svcnet::parse_match_level(args.match),
                                          svcnet::parse_invocation(args.invocation), opt);
  } else if (args.network == "parameter") {
    if (match_given || invocation_given)
      std::cerr << "warning: --match/--invocation are ignored for parameter networks\n";
    net = svcnet::build_parameter_network(coll, onts);
  } else {
    throw svcnet::ParseError("unknown network kind '" + args.network +
                             "': expected operation|parameter");
  }
  write_file(args.out, svcnet::export_network(net, svcnet::parse_export_format(args.format)));
  return 0;
}

struct AnalyzeArgs {
  std::string collection, match = "exact", invocation = "full", out_dir = ".";
  std::vector<std::string> ontologies;
  unsigned er_samples = 32;
  unsigned bootstrap = 100;
  std::uint64_t seed = 1;
  unsigned walk_length = 4;
  bool all_levels = false;
  bool allow_vacuous = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const auto onts = load_ontologies(args.ontologies);
  const auto coll = svcnet::load_collection(read_file(args.collection));

  svcnet::AnalyzeOptions opt;
  opt.all_levels = args.all_levels;
  opt.level = svcnet::parse_match_level(args.match);
  opt.invocation = svcnet::parse_invocation(args.invocation);
  opt.allow_vacuous = args.allow_vacuous;
  opt.er_samples = args.er_samples;
  opt.bootstrap_n = args.bootstrap;
  opt.seed = args.seed;
  opt.walk_length = args.walk_length;
  opt.threads = thread_count();

  const svcnet::AnalysisBundle bundle = svcnet::analyze_collection(coll, onts, opt);

  const fs::path dir(args.out_dir);
  write_file(dir / "analysis.json", svcnet::bundle_to_json(bundle));
  write_file(dir / "analysis.md", svcnet::bundle_to_markdown(bundle));
  for (const svcnet::NetworkAnalysis& a : bundle.networks) {
    if (!a.cumulative_degrees.empty())
      write_file(dir / ("cumdeg_" + a.name + ".csv"),
                 svcnet::cumulative_degree_csv(a.cumulative_degrees));
    if (a.communities) {
      std::string csv = "rank,size\n";
      for (std::size_t i = 0; i < a.communities->sizes.size(); ++i)
        csv += std::to_string(i + 1) + "," + std::to_string(a.communities->sizes[i]) + "\n";
      write_file(dir / ("communities_" + a.name + ".csv"), csv);
    }
  }
  std::cout << "analysis written to " << dir.string() << "\n";
  return 0;
}

struct CommunitiesArgs {
  std::string collection, network = "operation", match = "exact", out_prefix = "communities",
              domains;
  std::vector<std::string> ontologies;
  unsigned walk_length = 4;
};

int cmd_communities(const CommunitiesArgs& args) {
  const auto onts = load_ontologies(args.ontologies);
  const auto coll = svcnet::load_collection(read_file(args.collection));
  coll.validate_against(onts);

  svcnet::InteractionNetwork net;
  if (args.network == "operation") {
    svcnet::BuildOptions opt;
    opt.threads = thread_count();
    net = svcnet::build_operation_network(coll, onts, svcnet::parse_match_level(args.match),
                                          svcnet::Invocation::Full, opt);
  } else if (args.network == "parameter") {
    net = svcnet::build_parameter_network(coll, onts);
  } else {
    throw svcnet::ParseError("unknown network kind '" + args.network + "'");
  }

  const svcnet::ComponentDecomposition comps = svcnet::decompose(net);
  if (!comps.giant)
    throw svcnet::ValidationError("network has no giant component to partition");
  const svcnet::InteractionNetwork giant =
      svcnet::induced_subnetwork(net, comps.components[*comps.giant]);
  const svcnet::WalktrapResult wt = svcnet::walktrap(giant, args.walk_length);

  const fs::path prefix(args.out_prefix);
  write_file(prefix.string() + ".partition.json", svcnet::partition_to_json(wt.partition));
  write_file(prefix.string() + ".membership.csv", svcnet::membership_csv(wt.partition));
  write_file(prefix.string() + ".sizes.csv", svcnet::community_size_csv(wt.partition));
  std::cout << "communities: " << wt.partition.communities.size()
            << " modularity: " << wt.partition.modularity << "\n";
  if (!args.domains.empty()) {
    const auto labels = load_domains_csv(args.domains);
    const svcnet::DomainMixing mix = svcnet::community_domain_mixing(wt.partition, labels);
    write_file(prefix.string() + ".mixing.csv", svcnet::domain_mixing_csv(mix));
    std::cout << "domain purity: " << mix.purity << "\n";
  }
  return 0;
}

struct ComposeArgs {
  std::string collection, provided, goal, level = "exact", strategy = "forward";
  std::vector<std::string> ontologies;
  std::size_t max_depth = 8;
  bool partial = false;
};

int cmd_compose(const ComposeArgs& args) {
  const auto onts = load_ontologies(args.ontologies);
  const auto coll = svcnet::load_collection(read_file(args.collection));
  coll.validate_against(onts);

  svcnet::CompositionRequest req;
  req.provided = parse_concept_list(args.provided);
  req.goals = parse_concept_list(args.goal);
  req.level = svcnet::parse_match_level(args.level);
  req.strategy = svcnet::parse_strategy(args.strategy);
  req.max_depth = args.max_depth;
  req.partial_invocation = args.partial;

  const svcnet::CompositionPlan plan = svcnet::compose(req, coll, onts);
  std::cout << svcnet::plan_to_json(plan);
  return plan.solvable ? 0 : 1;
}

struct GenerateArgs {
  std::uint32_t services = 0, ops_per_service = 1, concepts = 0;
  double skew = 1.0;
  std::uint64_t seed = 0;
  std::string ontology_id = "synth";
  std::string out_collection, out_ontology;
};

int cmd_generate(const GenerateArgs& args) {
  svcnet::GeneratorConfig cfg;
  cfg.n_services = args.services;
  cfg.ops_per_service = args.ops_per_service;
  cfg.n_concepts = args.concepts;
  cfg.concept_reuse_skew = args.skew;
  cfg.seed = args.seed;
  cfg.ontology_id = args.ontology_id;
  const svcnet::GeneratedCorpus corpus = svcnet::generate_collection(cfg);
  write_file(args.out_collection, svcnet::serialize_collection(corpus.collection));
  write_file(args.out_ontology, svcnet::serialize_ontology(corpus.ontology));
  return 0;
}

struct ImportArgs {
  std::string wsdl_dir, out, report;
};

int cmd_import(const ImportArgs& args) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.wsdl_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".wsdl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  svcnet::WsdlImportReport report;
  std::vector<svcnet::Service> services;
  std::set<std::string> names;
  for (const fs::path& file : files) {
    ++report.files;
    auto imported = svcnet::import_wsdl(read_file(file), report, file.filename().string());
    for (svcnet::Service& s : imported) {
      std::string name = s.name;
      for (int suffix = 2; !names.insert(name).second; ++suffix) {
        name = s.name + "_" + std::to_string(suffix);
        report.warnings.push_back(file.filename().string() + ": service '" + s.name +
                                  "' renamed to '" + name + "' to keep names unique");
      }
      s.name = name;
      for (svcnet::Operation& op : s.operations) op.service = name;
      services.push_back(std::move(s));
    }
  }
  const svcnet::Collection coll(std::move(services));
  write_file(args.out, svcnet::serialize_collection(coll));

  nlohmann::ordered_json jr;
  jr["files"] = report.files;
  jr["services"] = report.services;
  jr["operations_imported"] = report.operations_imported;
  jr["operations_rejected"] = report.operations_rejected;
  jr["parts_skipped"] = report.parts_skipped;
  jr["warnings"] = report.warnings;
  const std::string report_path = args.report.empty() ? args.out + ".report.json" : args.report;
  write_file(report_path, jr.dump(2) + "\n");
  std::cout << "imported " << report.operations_imported << " operations from " << report.files
            << " files (" << report.operations_rejected << " rejected, " << report.parts_skipped
            << " parts skipped)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svcnet: semantic service interaction network toolkit"};
  app.require_subcommand(1);

  ExtractArgs ex;
  CLI::App* extract = app.add_subcommand("extract", "Build a network and export it");
  extract->add_option("--collection", ex.collection, "Collection JSON file")->required();
  extract->add_option("--ontology", ex.ontologies, "Ontology JSON file (repeatable)")->required();
  extract->add_option("--network", ex.network, "operation|parameter");
  CLI::Option* ex_match = extract->add_option("--match", ex.match, "exact|plugin|subsume|fitin");
  CLI::Option* ex_inv = extract->add_option("--invocation", ex.invocation, "full|partial");
  extract->add_option("--format", ex.format, "tsv|dot|json");
  extract->add_option("--out", ex.out, "Output path")->required();
  extract->add_flag("--allow-vacuous", ex.allow_vacuous,
                    "Vacuous full-invocation edges into zero-input operations");

  AnalyzeArgs an;
  CLI::App* analyze = app.add_subcommand("analyze", "Full topology analysis bundle");
  analyze->add_option("--collection", an.collection)->required();
  analyze->add_option("--ontology", an.ontologies)->required();
  analyze->add_option("--match", an.match, "Operation-network level when not --all-levels");
  analyze->add_option("--invocation", an.invocation, "full|partial");
  analyze->add_option("--er-samples", an.er_samples, "ER baseline samples");
  analyze->add_option("--bootstrap", an.bootstrap, "KS bootstrap replicates");
  analyze->add_option("--seed", an.seed, "Root seed for all randomized stages");
  analyze->add_option("--walk-length", an.walk_length, "Walktrap walk length");
  analyze->add_flag("--all-levels", an.all_levels, "Build all four operation networks");
  analyze->add_flag("--allow-vacuous", an.allow_vacuous);
  analyze->add_option("--out-dir", an.out_dir, "Output directory");

  CommunitiesArgs cm;
  CLI::App* communities = app.add_subcommand("communities", "Walktrap community detection");
  communities->add_option("--collection", cm.collection)->required();
  communities->add_option("--ontology", cm.ontologies)->required();
  communities->add_option("--network", cm.network, "operation|parameter");
  communities->add_option("--match", cm.match);
  communities->add_option("--walk-length", cm.walk_length);
  communities->add_option("--domains", cm.domains, "node,domain CSV for mixing analysis");
  communities->add_option("--out-prefix", cm.out_prefix);

  ComposeArgs co;
  CLI::App* compose = app.add_subcommand("compose", "Composition search");
  compose->add_option("--collection", co.collection)->required();
  compose->add_option("--ontology", co.ontologies)->required();
  compose->add_option("--provided", co.provided, "Comma-separated provided concepts");
  compose->add_option("--goal", co.goal, "Comma-separated goal concepts")->required();
  compose->add_option("--level", co.level);
  compose->add_option("--strategy", co.strategy,
                      "forward|backward|hub-seeded|community-pruned|two-phase");
  compose->add_option("--max-depth", co.max_depth);
  compose->add_flag("--partial-invocation", co.partial);

  GenerateArgs ge;
  CLI::App* generate = app.add_subcommand("generate", "Synthetic collection generator");
  generate->add_option("--services", ge.services)->required();
  generate->add_option("--ops-per-service", ge.ops_per_service);
  generate->add_option("--concepts", ge.concepts)->required();
  generate->add_option("--skew", ge.skew, "Zipf reuse exponent");
  generate->add_option("--seed", ge.seed)->required();
  generate->add_option("--ontology-id", ge.ontology_id);
  generate->add_option("--out-collection", ge.out_collection)->required();
  generate->add_option("--out-ontology", ge.out_ontology)->required();

  ImportArgs im;
  CLI::App* import_cmd = app.add_subcommand("import", "Import a directory of WSDL files");
  import_cmd->add_option("--wsdl-dir", im.wsdl_dir)->required();
  import_cmd->add_option("--out", im.out, "Canonical collection output")->required();
  import_cmd->add_option("--report", im.report, "Import report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*extract) return cmd_extract(ex, ex_match->count() > 0, ex_inv->count() > 0);
    if (*analyze) return cmd_analyze(an);
    if (*communities) return cmd_communities(cm);
    if (*compose) return cmd_compose(co);
    if (*generate) return cmd_generate(ge);
    if (*import_cmd) return cmd_import(im);
  } catch (const svcnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
