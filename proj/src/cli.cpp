#include "coursegen/cli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "coursegen/config.hpp"
#include "coursegen/corpus.hpp"
#include "coursegen/diagnostics.hpp"
#include "coursegen/expand.hpp"
#include "coursegen/graph.hpp"
#include "coursegen/site.hpp"
#include "coursegen/slides.hpp"

namespace coursegen::cli {

namespace {

constexpr int kOk = 0;
constexpr int kBuildError = 1;
constexpr int kUsageError = 2;

struct Options {
    std::string config_path = "course.cfg";
    std::string out_dir;
    std::string format;
    std::string topic;
    bool strict = false;
    int max_depth = 0;
};

struct Session {
    config::BuildConfig cfg;
    std::optional<Corpus> corpus;
    // Resolved toc entries plus root_topic, as canonical names.
    std::vector<std::string> seeds;
};

// Loads config, applies flag overrides, loads the corpus, and resolves toc
// and root_topic. Returns 0 or the exit code to stop with.
int prepare(const Options& opt, std::ostream& err, Session& s) {
    config::ConfigResult loaded = config::load_config(opt.config_path);
    print_diagnostics(loaded.diagnostics, err);
    if (!loaded.ok()) return kUsageError;

    s.cfg = std::move(loaded.config);
    if (!opt.out_dir.empty()) s.cfg.out_dir = opt.out_dir;
    if (opt.format == "site") s.cfg.format = config::OutputFormat::Site;
    if (opt.format == "slides") s.cfg.format = config::OutputFormat::Slides;
    if (opt.strict) s.cfg.strict = true;
    if (opt.max_depth > 0) s.cfg.max_depth = static_cast<std::size_t>(opt.max_depth);

    try {
        s.corpus.emplace(load_corpus(s.cfg.roots()));
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return kBuildError;
    }

    std::vector<Diagnostic> toc_diags;
    auto check_ref = [&](const std::string& ref, const char* what) {
        ResolveResult r = s.corpus->resolve(ref);
        if (r.status == ResolveStatus::Found) {
            s.seeds.push_back(r.object->name);
            return;
        }
        std::string msg = std::string(what) + " '" + ref + "' " +
                          (r.status == ResolveStatus::Ambiguous
                               ? "is ambiguous"
                               : "does not resolve to any object");
        toc_diags.push_back({Severity::Error, DiagCode::TocEntryUnresolved,
                             opt.config_path, 1, 1, std::move(msg)});
    };
    for (const std::string& entry : s.cfg.toc) check_ref(entry, "toc entry");
    if (!s.cfg.root_topic.empty() &&
        std::find(s.cfg.toc.begin(), s.cfg.toc.end(), s.cfg.root_topic) ==
            s.cfg.toc.end()) {
        check_ref(s.cfg.root_topic, "root_topic");
    }
    if (!toc_diags.empty()) {
        print_diagnostics(toc_diags, err);
        return kUsageError;
    }
    return kOk;
}

int run_lint(const Session& s, std::ostream& err, std::size_t& errors) {
    std::vector<Diagnostic> diags = graph::lint(*s.corpus, s.cfg);
    print_diagnostics(diags, err);
    errors = 0;
    for (const Diagnostic& d : diags) {
        if (d.severity == Severity::Error) ++errors;
    }
    return errors == 0 ? kOk : kBuildError;
}

int cmd_build(const Options& opt, std::ostream& out, std::ostream& err) {
    (void)out;
    Session s;
    if (int rc = prepare(opt, err, s); rc != kOk) return rc;

    std::size_t errors = 0;
    if (run_lint(s, err, errors) != kOk) {
        err << "build aborted: " << errors << " error(s)\n";
        return kBuildError;
    }

    try {
        site::WriteSummary summary;
        if (s.cfg.format == config::OutputFormat::Site) {
            site::SitePlan plan = site::plan_site(*s.corpus, s.cfg);
            summary = site::write_outputs(site::render_site(*s.corpus, plan, s.cfg),
                                          s.cfg.out_dir);
        } else {
            std::string topic = !opt.topic.empty() ? opt.topic : s.cfg.root_topic;
            if (topic.empty()) {
                err << "error: slides output needs --topic or a root_topic in the "
                       "config\n";
                return kUsageError;
            }
            ResolveResult r = s.corpus->resolve(topic);
            if (r.status != ResolveStatus::Found) {
                err << "error: topic '" << topic << "' "
                    << (r.status == ResolveStatus::Ambiguous
                            ? "is ambiguous"
                            : "does not resolve to any object")
                    << "\n";
                return kUsageError;
            }
            std::map<std::string, std::string> files;
            files[r.object->name + ".json"] =
                slides::render_slides(r.object->name, *s.corpus, s.cfg.max_depth);
            summary = site::write_outputs(files, s.cfg.out_dir);
        }
        err << "wrote " << summary.files_written << " file(s), "
            << summary.bytes_written << " byte(s) to "
            << s.cfg.out_dir.generic_string() << "\n";
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return kBuildError;
    }
    return kOk;
}

int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
    Session s;
    if (int rc = prepare(opt, err, s); rc != kOk) return rc;

    std::size_t errors = 0;
    int rc = run_lint(s, err, errors);

    graph::DependencyGraph g = graph::build_graph(*s.corpus);
    out << graph::format_reuse_report(graph::reuse_report(g, s.seeds), g);
    return rc;
}

int cmd_graph(const Options& opt, std::ostream& out, std::ostream& err) {
    Session s;
    if (int rc = prepare(opt, err, s); rc != kOk) return rc;
    out << graph::emit_dot(graph::build_graph(*s.corpus));
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"compiler and linter for reusable course content trees"};
    app.name("coursegen");
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "config file path")
        ->capture_default_str();
    app.add_option("--out", opt.out_dir, "output directory (overrides config)");
    app.add_option("--format", opt.format, "output format: site or slides")
        ->check(CLI::IsMember({"site", "slides"}));
    app.add_option("--topic", opt.topic, "topic to render (slides format)");
    app.add_flag("--strict", opt.strict, "treat warnings as errors");
    app.add_option("--max-depth", opt.max_depth, "include nesting limit")
        ->check(CLI::Range(1, 1000000));

    CLI::App* build = app.add_subcommand("build", "compile to the output directory");
    CLI::App* check = app.add_subcommand("check", "lint and print a reuse report");
    CLI::App* graph_cmd = app.add_subcommand("graph", "print the dependency graph as DOT");
    for (CLI::App* sub : {build, check, graph_cmd}) sub->fallthrough();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("coursegen");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run 'coursegen --help' for usage\n";
        return kUsageError;
    }

    if (build->parsed()) return cmd_build(opt, out, err);
    if (check->parsed()) return cmd_check(opt, out, err);
    return cmd_graph(opt, out, err);
}

}  // namespace coursegen::cli
