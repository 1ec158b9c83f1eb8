// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "covcat/fibre_product.hpp"
#include "covcat/io.hpp"
#include "workspace.hpp"

namespace covcat::cli {

namespace {

using io::Json;

struct Options {
    std::string workspace = ".";
    std::vector<std::string> inputs;

    // validate
    std::vector<std::string> files;

    // check
    std::string check_kind;
    std::string functor;
    std::string method;
    std::vector<std::string> family;
    std::string json_out;
    std::string certificate_out;

    // build
    std::string build_kind;
    std::vector<std::string> build_args;
    std::string out_dir = ".";
    std::string name;
    std::string deck_of;
};

/// A verdict with its exit status.
struct Outcome {
    Json report;
    int code = kPositive;
};

int precondition_code(PreconditionError::Reason reason) {
    switch (reason) {
        case PreconditionError::Reason::NotConnected: return kNotConnected;
        case PreconditionError::Reason::NotCovering: return kNotCovering;
        default: return kInputError;
    }
}

Json names(const LinearCategory& c, const std::vector<ObjectIndex>& objects) {
    Json out = Json::array();
    for (ObjectIndex x : objects) {
        out.push_back(c.object_name(x));
    }
    return out;
}

Json violations_to_json(const ValidationReport& report) {
    Json out = Json::array();
    for (const auto& v : report.violations) {
        out.push_back(Json{{"kind", std::string(to_string(v.kind))}, {"message", v.message}, {"witness", v.witness}});
    }
    return out;
}

Json verdict_header(const Json& command, const std::string& status, int code) {
    Json j;
    j["format"] = io::kVerdictFormat;
    j["command"] = command;
    j["status"] = status;
    j["exit_code"] = code;
    return j;
}

// ---------------------------------------------------------------- validate

Outcome cmd_validate(Workspace& ws, const Options& opt) {
    std::vector<std::string> loaded;
    for (const auto& file : opt.files) {
        loaded.push_back(ws.load_file(file));
    }
    Json documents = Json::array();
    bool all_valid = true;
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        const std::string& name = loaded[i];
        const std::string format = io::document_format(ws.find(name)->document);
        ValidationReport report;
        if (format == io::kFunctorFormat) {
            const LinearFunctor& f = ws.functor(name);
            for (const CategoryPtr& c : {f.source_ptr(), f.target_ptr()}) {
                for (auto& v : validate_category(*c).violations) {
                    v.message = ws.category_name(c) + ": " + v.message;
                    report.violations.push_back(std::move(v));
                }
            }
            for (auto& v : validate_functor(f).violations) {
                report.violations.push_back(std::move(v));
            }
        } else if (format == io::kAlgebraFormat) {
            const io::AlgebraDocument doc = ws.algebra(name);
            try {
                report = validate_category(category_from_algebra(doc.algebra, doc.idempotents));
            } catch (const std::invalid_argument& e) {
                report.violations.push_back(Violation{Violation::Kind::Structure, e.what(), {}});
            }
        } else {
            report = validate_category(*ws.category(name));
        }
        all_valid = all_valid && report.ok();
        documents.push_back(Json{{"file", opt.files[i]},
                                 {"name", name},
                                 {"format", format},
                                 {"valid", report.ok()},
                                 {"violations", violations_to_json(report)}});
    }
    const int code = all_valid ? kPositive : kNegative;
    Json report = verdict_header(Json{{"validate", opt.files}}, all_valid ? "Valid" : "Invalid", code);
    report["documents"] = documents;
    return {report, code};
}

// ---------------------------------------------------------------- check

Json covering_evidence(const CoveringCheck& check, const LinearFunctor& f) {
    Json e;
    if (check.certificate) {
        Json fibres = Json::object();
        for (ObjectIndex b = 0; b < check.certificate->fibres.size(); ++b) {
            fibres[f.target().object_name(b)] = names(f.source(), check.certificate->fibres[b]);
        }
        e["fibres"] = fibres;
        e["blocks"] = check.certificate->blocks.size();
    } else {
        e["failure"] = io::covering_failure_to_json(*check.failure, f);
    }
    return e;
}

void require_valid(const LinearFunctor& f, const std::string& name) {
    const ValidationReport report = validate_functor(f);
    if (!report.ok()) {
        throw InputError("functor \"" + name + "\" is not a valid functor: " + report.violations.front().message);
    }
}

Outcome check_covering_cmd(const LinearFunctor& f, const Json& command, const Options& opt) {
    const CoveringCheck check = check_covering(f);
    const int code = check ? kPositive : kNegative;
    Json report = verdict_header(command, check ? "Covering" : "NotCovering", code);
    report["evidence"] = covering_evidence(check, f);
    if (check && !opt.certificate_out.empty()) {
        io::write_document(opt.certificate_out, io::certificate_to_json(*check.certificate, opt.functor));
    }
    return {report, code};
}

Outcome check_trivial_cmd(const LinearFunctor& f, const Json& command) {
    const CoveringCheck check = check_covering(f);
    if (!check) {
        Json report = verdict_header(command, "NotCovering", kNotCovering);
        report["evidence"] = covering_evidence(check, f);
        return {report, kNotCovering};
    }
    const Components base = connected_components(f.target());
    if (!base.connected()) {
        Json report = verdict_header(command, "NotConnected", kNotConnected);
        report["evidence"] = Json{{"base_components", io::components_to_json(base, f.target())}};
        return {report, kNotConnected};
    }
    const TrivialityResult result = is_trivial_covering(*check.certificate);
    const int code = result.trivial ? kPositive : kNegative;
    Json report = verdict_header(command, result.trivial ? "Trivial" : "NonTrivial", code);
    report["evidence"] = io::triviality_to_json(result, f.source());
    return {report, code};
}

Json galois_evidence(const GaloisVerdict& v, const LinearFunctor& f) {
    Json e;
    e["status"] = std::string(to_string(v.status));
    if (v.status == GaloisStatus::NotConnected) {
        e["components"] = io::components_to_json(v.components, f.source());
        return e;
    }
    if (v.status == GaloisStatus::NotCovering) {
        e["failure"] = io::covering_failure_to_json(*v.covering_failure, f);
        return e;
    }
    e["fibre"] = names(f.source(), v.fibre);
    if (v.method == GaloisMethod::Direct) {
        const DeckGroup& g = *v.group;
        e["deck_group"] = io::deck_group_to_json(g, f.source());
        std::vector<ObjectIndex> orbit;
        for (const auto& row : g.action) {
            orbit.push_back(row[v.fibre.front()]);
        }
        std::sort(orbit.begin(), orbit.end());
        std::vector<ObjectIndex> missed;
        for (ObjectIndex x : v.fibre) {
            if (!std::binary_search(orbit.begin(), orbit.end(), x)) {
                missed.push_back(x);
            }
        }
        e["orbit"] = names(f.source(), orbit);
        e["unreached"] = names(f.source(), missed);
    } else {
        e["square_objects"] = v.square_objects;
        if (v.square_failure) {
            e["square_projection_covering"] = false;
            // The failing block lives in F ×_B F; rebuild it to name its objects.
            const FibreProduct square = fibre_product(f, f);
            e["square_failure"] = io::covering_failure_to_json(*v.square_failure, square.first_projection);
        } else {
            e["square_projection_covering"] = true;
            e["square_triviality"] = io::triviality_to_json(*v.square_triviality, *v.square);
        }
    }
    return e;
}

Outcome check_galois_cmd(const LinearFunctor& f, Json command, const Options& opt) {
    std::vector<GaloisMethod> methods;
    if (opt.method.empty() || opt.method == "direct") {
        methods.push_back(GaloisMethod::Direct);
    }
    if (opt.method.empty() || opt.method == "fibre") {
        methods.push_back(GaloisMethod::FibreProduct);
    }
    command["method"] = opt.method.empty() ? "both" : opt.method;
    std::vector<GaloisVerdict> verdicts;
    for (GaloisMethod m : methods) {
        verdicts.push_back(is_galois(f, m));
    }
    for (const auto& v : verdicts) {
        if (v.status != verdicts.front().status) {
            throw std::logic_error("the direct and fibre-product methods disagree on \"" + opt.functor + "\"");
        }
    }
    const GaloisStatus status = verdicts.front().status;
    const int code = exit_code(status);
    Json report = verdict_header(command, std::string(to_string(status)), code);
    Json evidence = Json::object();
    for (const auto& v : verdicts) {
        evidence[std::string(to_string(v.method))] = galois_evidence(v, f);
    }
    report["evidence"] = evidence;
    return {report, code};
}

Outcome check_universal_cmd(Workspace& ws, const LinearFunctor& u, Json command, const Options& opt) {
    command["family"] = opt.family;
    if (opt.family.empty()) {
        throw InputError("check universal needs --family with at least one functor");
    }
    const CoveringCheck check = check_covering(u);
    if (!check) {
        Json report = verdict_header(command, "NotCovering", kNotCovering);
        report["evidence"] = covering_evidence(check, u);
        return {report, kNotCovering};
    }
    const Components components = connected_components(u.source());
    if (!components.connected()) {
        Json report = verdict_header(command, "NotConnected", kNotConnected);
        report["evidence"] = Json{{"components", io::components_to_json(components, u.source())}};
        return {report, kNotConnected};
    }
    std::vector<LinearFunctor> family;
    for (const auto& name : opt.family) {
        const LinearFunctor& g = ws.functor(name);
        require_valid(g, name);
        if (!same_category(g.target_ptr(), u.target_ptr())) {
            throw InputError("family member \"" + name + "\" has a different base than \"" + opt.functor + "\"");
        }
        const GaloisVerdict v = is_galois(g, GaloisMethod::Direct);
        if (v.status != GaloisStatus::Galois) {
            throw InputError("family member \"" + name + "\" is not a Galois covering (" +
                             std::string(to_string(v.status)) + ")");
        }
        family.push_back(g);
    }
    const UniversalityReport result = check_universal_against(u, family);
    const int code = result.universal_relative_to_family ? kPositive : kNegative;
    Json report = verdict_header(
        command, result.universal_relative_to_family ? "UniversalRelativeToFamily" : "NotUniversalRelativeToFamily",
        code);
    Json members = Json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const UniversalityMember& m = result.members[i];
        Json mj{{"functor", opt.family[i]}, {"result", m.pass ? "PASS" : "FAIL"}, {"product_objects", m.product_objects}};
        const FibreProduct product = fibre_product(u, family[i]);
        if (m.projection_failure) {
            mj["projection_covering"] = false;
            mj["projection_failure"] = io::covering_failure_to_json(*m.projection_failure, product.first_projection);
        } else {
            mj["projection_covering"] = true;
            mj["triviality"] = io::triviality_to_json(*m.triviality, *product.category);
        }
        members.push_back(mj);
    }
    report["evidence"] = Json{{"relative_to_family_only", true}, {"members", members}};
    return {report, code};
}

Outcome cmd_check(Workspace& ws, const Options& opt) {
    const LinearFunctor& f = ws.functor(opt.functor);
    require_valid(f, opt.functor);
    Json command{{"check", opt.check_kind}, {"functor", opt.functor}};
    Outcome outcome;
    if (opt.check_kind == "covering") {
        outcome = check_covering_cmd(f, command, opt);
    } else if (opt.check_kind == "trivial") {
        outcome = check_trivial_cmd(f, command);
    } else if (opt.check_kind == "galois") {
        outcome = check_galois_cmd(f, command, opt);
    } else {
        outcome = check_universal_cmd(ws, f, command, opt);
    }
    if (!opt.json_out.empty()) {
        io::write_document(opt.json_out, outcome.report);
    }
    return outcome;
}

// ---------------------------------------------------------------- build

class Writer {
public:
    Writer(const Options& opt, Json command) : dir_(opt.out_dir), command_(std::move(command)) {
        std::filesystem::create_directories(dir_);
    }

    void category(const LinearCategory& c, const std::string& name) {
        write(io::category_to_json(c, name), name, Json{{"objects", c.object_count()},
                                                        {"total_dimension", c.total_dimension()}});
    }

    void functor(const LinearFunctor& f, const std::string& name, const std::string& source,
                 const std::string& target) {
        write(io::functor_to_json(f, name, source, target), name, Json{{"source", source}, {"target", target}});
    }

    [[nodiscard]] Outcome finish() const {
        Json report;
        report["format"] = io::kVerdictFormat;
        report["command"] = command_;
        report["status"] = "Built";
        report["exit_code"] = static_cast<int>(kPositive);
        report["written"] = written_;
        return {report, kPositive};
    }

private:
    void write(const Json& doc, const std::string& name, Json summary) {
        const std::filesystem::path path = dir_ / (name + ".json");
        io::write_document(path.string(), doc);
        Json entry{{"name", name}, {"format", doc.at("format")}, {"path", path.generic_string()}};
        entry.update(summary);
        written_.push_back(entry);
    }

    std::filesystem::path dir_;
    Json command_;
    Json written_ = Json::array();
};

void expect_args(const Options& opt, std::size_t n, const char* usage) {
    if (opt.build_args.size() != n) {
        throw InputError(std::string("usage: covcat build ") + usage);
    }
}

Outcome cmd_build(Workspace& ws, const Options& opt) {
    Json command{{"build", opt.build_kind}, {"args", opt.build_args}};
    const auto named = [&](const std::string& fallback) { return opt.name.empty() ? fallback : opt.name; };

    if (opt.build_kind == "path-category") {
        expect_args(opt, 1, "path-category <quiver>");
        const io::QuiverDocument& q = ws.quiver(opt.build_args[0]);
        const PathCategory pc = path_category(q.quiver, q.relations, q.field);
        Writer w(opt, command);
        w.category(*pc.category, named(opt.build_args[0] + ".path"));
        return w.finish();
    }
    if (opt.build_kind == "from-algebra") {
        expect_args(opt, 1, "from-algebra <algebra>");
        const io::AlgebraDocument doc = ws.algebra(opt.build_args[0]);
        const LinearCategory c = category_from_algebra(doc.algebra, doc.idempotents);
        Writer w(opt, command);
        w.category(c, named(opt.build_args[0] + ".cat"));
        return w.finish();
    }
    if (opt.build_kind == "product-set") {
        expect_args(opt, 2, "product-set <category> <count>");
        const std::string& b = opt.build_args[0];
        std::size_t count = 0;
        try {
            std::size_t used = 0;
            count = std::stoul(opt.build_args[1], &used);
            if (used != opt.build_args[1].size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw InputError("product-set: count must be a non-negative integer, got \"" + opt.build_args[1] + "\"");
        }
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < count; ++i) {
            labels.push_back(std::to_string(i));
        }
        const CategoryWithFunctor p = product_with_set(ws.category(b), labels);
        const std::string name = named(b + "_x_" + opt.build_args[1]);
        Writer w(opt, command);
        w.category(*p.category, name);
        w.functor(p.functor, name + ".pr", name, b);
        return w.finish();
    }
    if (opt.build_kind == "fibre-product") {
        expect_args(opt, 2, "fibre-product <functor> <functor>");
        const LinearFunctor& f = ws.functor(opt.build_args[0]);
        const LinearFunctor& g = ws.functor(opt.build_args[1]);
        require_valid(f, opt.build_args[0]);
        require_valid(g, opt.build_args[1]);
        const FibreProduct p = fibre_product(f, g);
        const std::string name = named(opt.build_args[0] + "_x_" + opt.build_args[1]);
        Writer w(opt, command);
        w.category(*p.category, name);
        w.functor(p.first_projection, name + ".pr1", name, ws.category_name(f.source_ptr()));
        w.functor(p.second_projection, name + ".pr2", name, ws.category_name(g.source_ptr()));
        return w.finish();
    }
    // quotient
    expect_args(opt, 1, "quotient <category> --by-deck-of <functor>");
    if (opt.deck_of.empty()) {
        throw InputError("quotient needs --by-deck-of <functor>");
    }
    command["by_deck_of"] = opt.deck_of;
    const CategoryPtr c = ws.category(opt.build_args[0]);
    const LinearFunctor& f = ws.functor(opt.deck_of);
    require_valid(f, opt.deck_of);
    if (!same_category(f.source_ptr(), c)) {
        throw InputError("\"" + opt.deck_of + "\" is not a functor out of \"" + opt.build_args[0] + "\"");
    }
    const CoveringCheck check = check_covering(f);
    if (!check) {
        throw PreconditionError(PreconditionError::Reason::NotCovering,
                                "\"" + opt.deck_of + "\" is not a covering: " + check.failure->message);
    }
    const DeckGroup group = deck_group(*check.certificate);
    const Quotient q = quotient_by_group(f.source_ptr(), group.elements);
    const std::string name = named(opt.build_args[0] + "_mod_" + opt.deck_of);
    Writer w(opt, command);
    w.category(*q.category, name);
    w.functor(q.projection, name + ".P", opt.build_args[0], name);
    return w.finish();
}

}  // namespace

int exit_code(GaloisStatus status) {
    switch (status) {
        case GaloisStatus::Galois: return kPositive;
        case GaloisStatus::NonGalois: return kNegative;
        case GaloisStatus::NotConnected: return kNotConnected;
        case GaloisStatus::NotCovering: return kNotCovering;
    }
    return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Exact covering, Galois and universality checks for linear functors", "covcat"};
    app.require_subcommand(1);

    const auto common = [&](CLI::App* sub) {
        sub->add_option("-w,--workspace", opt.workspace, "Directory of input documents")->capture_default_str();
        sub->add_option("-i,--input", opt.inputs, "Additional input document");
    };

    CLI::App* validate = app.add_subcommand("validate", "Check category and functor axioms");
    validate->add_option("files", opt.files, "Documents to validate")->required();
    common(validate);

    CLI::App* check = app.add_subcommand("check", "Decide a property of a functor");
    check->add_option("kind", opt.check_kind, "covering, trivial, galois or universal")
        ->required()
        ->check(CLI::IsMember({"covering", "trivial", "galois", "universal"}));
    check->add_option("functor", opt.functor, "Functor name")->required();
    check->add_option("--method", opt.method, "Galois method: direct or fibre")
        ->check(CLI::IsMember({"direct", "fibre"}));
    check->add_option("--family", opt.family, "Comma separated Galois coverings")->delimiter(',');
    check->add_option("--json", opt.json_out, "Also write the report to this file");
    check->add_option("--certificate", opt.certificate_out, "Write the covering certificate to this file");
    common(check);

    CLI::App* build = app.add_subcommand("build", "Construct categories and functors");
    build->add_option("kind", opt.build_kind, "path-category, from-algebra, product-set, fibre-product or quotient")
        ->required()
        ->check(CLI::IsMember({"path-category", "from-algebra", "product-set", "fibre-product", "quotient"}));
    build->add_option("args", opt.build_args, "Arguments of the construction");
    build->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    build->add_option("--name", opt.name, "Name of the constructed category");
    build->add_option("--by-deck-of", opt.deck_of, "quotient: covering whose deck group acts");
    common(build);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kInputError;
    }

    try {
        Workspace ws;
        if (!opt.workspace.empty()) {
            ws.load_directory(opt.workspace);
        }
        for (const auto& input : opt.inputs) {
            ws.load_file(input);
        }
        Outcome outcome;
        if (*validate) {
            outcome = cmd_validate(ws, opt);
        } else if (*check) {
            outcome = cmd_check(ws, opt);
        } else {
            outcome = cmd_build(ws, opt);
        }
        out << io::dump(outcome.report);
        return outcome.code;
    } catch (const PreconditionError& e) {
        err << "covcat: " << e.what() << "\n";
        return precondition_code(e.reason());
    } catch (const io::DocumentError& e) {
        err << "covcat: " << e.what() << "\n";
        return kInputError;
    } catch (const InputError& e) {
        err << "covcat: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "covcat: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        err << "covcat: internal error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "covcat: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace covcat::cli
