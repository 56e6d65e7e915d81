#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "handles.hpp"
#include "httplib.h"
#include "service.hpp"

namespace fs = std::filesystem;
using namespace sqt;

namespace {

constexpr int kInputError = 1;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": error: FileNotFound: cannot open file (" +
                            std::strerror(errno) + ")");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw InputError(path.string() + ": error: cannot write file");
}

// "FILE:LINE:COL: CODE: message" for every diagnostic.
void report_failure(const std::string& file, const Failure& f) {
  const auto& ds = f.detail.value("diagnostics", json::array());
  if (ds.empty()) {
    std::cerr << (file.empty() ? "" : file + ": ") << "error: "
              << f.detail.value("error", std::string("Error")) << ": " << f.what() << "\n";
    return;
  }
  for (const auto& d : ds)
    std::cerr << file << ":" << d.value("line", 0) << ":" << d.value("column", 0) << ": error: "
              << d.value("code", std::string()) << ": " << d.value("message", std::string())
              << "\n";
}

Calculus load(const std::string& file) {
  const std::string text = read_file(file);
  try {
    return parse_calculus(text);
  } catch (const Failure& f) {
    report_failure(file, f);
    throw InputError("");
  }
}

std::string render_options(bool bussproofs) {
  return bussproofs ? R"({"macroStyle":"bussproofs"})" : "";
}

// Proof-style derivations are math; each output line becomes a display.
std::string displays(const std::string& tex, bool bussproofs) {
  if (bussproofs) return tex;
  std::istringstream in(tex);
  std::string line, out;
  while (std::getline(in, line))
    if (!line.empty()) out += "\\[\n" + line + "\n\\]\n";
  return out;
}

std::string document(const std::string& body, bool bussproofs) {
  char* out = nullptr;
  ok(sq_latex_document(body.c_str(), opt(render_options(bussproofs)), &out));
  return take(out);
}

void emit(const std::string& text, const std::string& outFile) {
  if (outFile.empty())
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  else
    write_file(outFile, !text.empty() && text.back() == '\n' ? text : text + "\n");
}

struct CheckArgs {
  std::string file;
  std::string property;
  std::string rule;
  std::string ruleUp;
  std::string ruleDown;
  int depth = -1;
  std::string out = ".";
  bool bussproofs = false;
  bool document = false;
};

int run_check(const CheckArgs& a) {
  Calculus calc = load(a.file);
  if (a.property.empty()) throw InputError("check: --property is required");
  json params = json::object();
  if (!a.rule.empty()) params["rule"] = a.rule;
  if (!a.ruleUp.empty()) params["ruleUp"] = a.ruleUp;
  if (!a.ruleDown.empty()) params["ruleDown"] = a.ruleDown;
  if (a.depth >= 0) params["depth"] = a.depth;
  if (a.bussproofs) params["macroStyle"] = "bussproofs";
  char* reportJson = nullptr;
  char* reportTex = nullptr;
  int worst = 0;
  try {
    ok(sq_check(calc.get(), a.property.c_str(), params.dump().c_str(), &reportJson, &reportTex,
                &worst));
  } catch (const Failure& f) {
    report_failure(a.file, f);
    return kInputError;
  }
  const std::string js = take(reportJson);
  std::string tex = take(reportTex);
  if (a.document) tex = document(tex, a.bussproofs);
  fs::create_directories(a.out);
  write_file(fs::path(a.out) / "report.json", js);
  write_file(fs::path(a.out) / "report.tex", tex);

  const json r = json::parse(js);
  const auto& s = r["summary"];
  std::cout << r["property"].get<std::string>() << " " << r["calculus"].get<std::string>() << ": "
            << s["proved"] << " proved, " << s["failed"] << " failed, " << s["unknown"]
            << " unknown\n";
  for (const auto& c : r["cases"])
    std::cout << "  " << c["status"].get<std::string>() << "  " << c["id"].get<std::string>()
              << (c["notes"].get<std::string>().empty() ? "" : "  (" + c["notes"].get<std::string>() + ")")
              << "\n";
  if (!r["notes"].get<std::string>().empty())
    std::cout << "  " << r["notes"].get<std::string>() << "\n";
  return worst;
}

int run_prove(const std::string& file, const std::string& goal, int depth, bool asJson,
              bool bussproofs, bool doc, const std::string& outFile) {
  Calculus calc = load(file);
  int found = 0;
  char* out = nullptr;
  try {
    ok(sq_prove(calc.get(), goal.c_str(), static_cast<std::size_t>(depth), &found, &out));
  } catch (const Failure& f) {
    report_failure("<goal>", f);
    return kInputError;
  }
  const std::string tree = take(out);
  if (!found) {
    std::cerr << "no proof within depth " << depth << "\n";
    if (asJson) emit(tree, outFile);
    return 2;
  }
  if (asJson) {
    emit(tree, outFile);
    return 0;
  }
  ok(sq_render_tree(calc.get(), tree.c_str(), opt(render_options(bussproofs)), &out));
  std::string tex = take(out);
  emit(doc ? document(displays(tex, bussproofs), bussproofs) : tex, outFile);
  return 0;
}

int run_render(const std::string& file, const std::string& rule, const std::string& goal,
               const std::string& treeFile, bool bussproofs, bool doc, const std::string& outFile) {
  Calculus calc = load(file);
  const std::string options = render_options(bussproofs);
  char* out = nullptr;
  try {
    if (!goal.empty()) {
      ok(sq_render_sequent(calc.get(), goal.c_str(), opt(options), &out));
    } else if (!treeFile.empty()) {
      ok(sq_render_tree(calc.get(), read_file(treeFile).c_str(), opt(options), &out));
    } else {
      ok(sq_render_rules(calc.get(), rule.empty() ? nullptr : rule.c_str(), opt(options), &out));
    }
  } catch (const Failure& f) {
    report_failure(!goal.empty() ? "<goal>" : treeFile.empty() ? file : treeFile, f);
    return kInputError;
  }
  std::string tex = take(out);
  if (!goal.empty() && !doc) tex = "$" + tex + "$";
  if (doc) tex = document(goal.empty() ? displays(tex, bussproofs) : "\\[" + tex + "\\]\n", bussproofs);
  emit(tex, outFile);
  return 0;
}

int run_serve(const std::string& host, int port, const std::string& snapshotFile) {
  Service service(snapshotFile);
  if (!snapshotFile.empty() && fs::exists(snapshotFile)) {
    try {
      service.restore(json::parse(read_file(snapshotFile)));
    } catch (const std::exception& e) {
      std::cerr << snapshotFile << ": error: cannot restore snapshot: " << e.what() << "\n";
      return kInputError;
    }
  }
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return kInputError;
  }
  std::cerr << "sequitur " << sq_version() << " listening on http://" << host << ":" << port
            << "/v1\n";
  server.listen_after_bind();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequent calculus workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sq_version());

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Run a meta-property check and write report.json/report.tex");
  check->add_option("file", ca.file, "Calculus file")->required();
  check->add_option("--property", ca.property, "identity | weakening | invert | permute | cut");
  check->add_option("--rule", ca.rule, "Rule for invert, cut rule for cut");
  check->add_option("--rule-up", ca.ruleUp, "Upper rule for permute");
  check->add_option("--rule-down", ca.ruleDown, "Lower rule for permute");
  check->add_option("--depth", ca.depth, "Search depth")->check(CLI::Range(0, 12));
  check->add_option("--out", ca.out, "Output directory");
  check->add_flag("--bussproofs", ca.bussproofs, "Use bussproofs macros");
  check->add_flag("--document", ca.document, "Write a standalone LaTeX document");

  std::string pFile, pGoal, pOut;
  int pDepth = 4;
  bool pJson = false, pBuss = false, pDoc = false;
  auto* prove = app.add_subcommand("prove", "Search for a proof of a goal sequent");
  prove->add_option("file", pFile, "Calculus file")->required();
  prove->add_option("goal", pGoal, "Goal, e.g. \"(p |- p and p)\"")->required();
  prove->add_option("--depth", pDepth, "Search depth")->check(CLI::Range(0, 12));
  prove->add_flag("--json", pJson, "Print the proof tree as JSON");
  prove->add_flag("--bussproofs", pBuss, "Use bussproofs macros");
  prove->add_flag("--document", pDoc, "Wrap in a standalone LaTeX document");
  prove->add_option("--out", pOut, "Output file");

  std::string rFile, rRule, rGoal, rTree, rOut;
  bool rBuss = false, rDoc = false;
  auto* render = app.add_subcommand("render", "Render rules, a sequent or a proof tree as LaTeX");
  render->add_option("file", rFile, "Calculus file")->required();
  render->add_option("--rule", rRule, "Only this rule");
  render->add_option("--goal", rGoal, "Render a sequent");
  render->add_option("--tree", rTree, "Render a proof tree or session JSON file");
  render->add_flag("--bussproofs", rBuss, "Use bussproofs macros");
  render->add_flag("--document", rDoc, "Wrap in a standalone LaTeX document");
  render->add_option("--out", rOut, "Output file");

  std::string sHost = "127.0.0.1", sSnapshot;
  int sPort = default_port();
  auto* serve = app.add_subcommand("serve", "Serve the /v1 JSON API");
  serve->add_option("--host", sHost, "Bind address");
  serve->add_option("--port", sPort, "Port (default: SEQUITUR_PORT or 8080)")
      ->check(CLI::Range(1, 65535));
  serve->add_option("--snapshot", sSnapshot, "Snapshot file, restored at start-up");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return run_check(ca);
    if (*prove) return run_prove(pFile, pGoal, pDepth, pJson, pBuss, pDoc, pOut);
    if (*render) return run_render(rFile, rRule, rGoal, rTree, rBuss, rDoc, rOut);
    if (*serve) return run_serve(sHost, sPort, sSnapshot);
  } catch (const InputError& e) {
    if (*e.what()) std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const Failure& f) {
    report_failure("", f);
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
