// prove: rigorous search for a converse KAM proof over a parameter box.
// Reads the input file (or stdin), writes the report on stdout.
// Exit status: 0 proven, 2 partial (depth exceeded or halted), 1 error.

#include <converse/converse.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int report_error(cv_status s) {
    std::fprintf(stderr, "prove: %s: %s\n", cv_status_name(s), cv_last_error());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Search for a proof that no invariant tori exist over a box of parameters"};
    std::string input, backup, graphics, restore;
    long dp = 35, halt_after = -1;
    int depth = 30;
    bool stubborn = false, verbose = false;
    app.add_option("input", input, "input file (default: stdin)");
    app.add_option("-d", depth, "give up on a prism after this many cuts")->capture_default_str();
    app.add_option("-b", backup, "maintain a backup file");
    app.add_option("-g", graphics, "graphics file (.ps/.eps PostScript, otherwise SVG; 'off' for none)");
    app.add_option("-p", dp, "decimal places for the rigorous parts")->capture_default_str();
    app.add_flag("-s", stubborn, "keep going past prisms that fail at the maximum depth");
    app.add_flag("-t", verbose, "report every successful prism on stderr");
    app.add_option("-r", restore, "restore an interrupted computation from a backup file");
    app.add_option("--halt-after", halt_after, "stop after this many prisms (leaves a backup to resume)");
    CLI11_PARSE(app, argc, argv);

    cv_proof* proof = nullptr;
    cv_status s;
    if (!restore.empty()) {
        // keep backing up into the same file unless told otherwise
        std::string target = backup.empty() ? restore : backup;
        s = cv_proof_restore(restore.c_str(), target.c_str(), graphics.c_str(), halt_after, &proof);
    } else {
        std::string text;
        if (input.empty() || input == "-") {
            std::stringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream f(input);
            if (!f) {
                std::fprintf(stderr, "prove: cannot read %s\n", input.c_str());
                return 1;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        cv_proof_config cfg;
        cv_proof_config_default(&cfg);
        cfg.dp = dp;
        cfg.max_depth = depth;
        cfg.stubborn = stubborn;
        cfg.verbose = verbose;
        cfg.halt_after = halt_after;
        cfg.graphics = graphics.c_str();
        cfg.backup = backup.c_str();
        s = cv_proof_create(text.c_str(), &cfg, &proof);
    }
    if (s != CV_OK) return report_error(s);

    cv_outcome outcome;
    s = cv_proof_run(proof, &outcome);
    if (s != CV_OK) {
        cv_proof_destroy(proof);
        return report_error(s);
    }
    const char* report = nullptr;
    cv_proof_report(proof, &report);
    std::fputs(report, stdout);
    std::fflush(stdout);
    cv_proof_destroy(proof);
    return outcome == CV_PROVEN ? 0 : 2;
}
