#include <cstdio>
#include <cstdlib>
#include <string>

#include "weyltail/acceptance.hpp"

int main(int argc, char** argv)
{
    wt::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--quick") opt.quick = true;
        else if (a == "--threads" && i + 1 < argc) opt.threads = std::atoi(argv[++i]);
        else opt.only.push_back(std::atoi(a.c_str()));
    }
    bool ok = true;
    wt::run_acceptance(opt, [&](const wt::CriterionResult& r) {
        std::printf("%s\n", wt::format_result(r).c_str());
        std::fflush(stdout);
        ok = ok && r.pass;
    });
    return ok ? 0 : 1;
}
