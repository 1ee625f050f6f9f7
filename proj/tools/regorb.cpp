#include "regorb/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Base sizes and regular orbits of finite matrix groups"};
    regorb::JobSpec job;
    std::string mode = "auto";
    std::string report = "structured";
    app.add_option("--input", job.input, "generator file")->required()->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "certify | exact | auto")->check(CLI::IsMember({"certify", "exact", "auto"}));
    app.add_option("--max-group", job.max_group, "enumeration cap on |G|")->check(CLI::PositiveNumber);
    app.add_option("--max-space", job.max_space, "cap on |V| for vector scans")->check(CLI::PositiveNumber);
    app.add_option("--report", report, "structured | text")->check(CLI::IsMember({"structured", "text"}));
    app.add_option("--classes", job.classes, "class data file")->check(CLI::ExistingFile);
    app.add_option("--alphas", job.alphas, "alpha override file")->check(CLI::ExistingFile);
    app.add_option("--threads", job.threads, "workers for the regular-orbit scan")->check(CLI::Range(1u, 256u));
    app.add_option("--field-db", job.field_db, "defining polynomial database (overrides REGORB_FIELD_DB)")
        ->check(CLI::ExistingFile);
    app.add_flag("--timing", job.timing, "include wall-clock time in the report");
    CLI11_PARSE(app, argc, argv);

    job.mode = regorb::parse_mode(mode);
    job.format = report == "text" ? regorb::ReportFormat::text : regorb::ReportFormat::structured;
    try {
        auto result = regorb::run(job);
        std::cout << regorb::render(result, job.format);
        return result.exit_code;
    } catch (const regorb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return regorb::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
