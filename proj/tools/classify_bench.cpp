// Times the signature survey with the OpenMP fan-out against the serial
// reference path and checks they produce identical tables.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "morphplan/classify.hpp"

using namespace morphplan;

namespace {

double run_ms(int n, bool parallel, ClassifyResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = isotypy_classes(n, parallel);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool same_table(const ClassifyResult& a, const ClassifyResult& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const ClassRow& x = a.rows[i];
        const ClassRow& y = b.rows[i];
        if (x.canonicalForm != y.canonicalForm || x.S != y.S || x.component != y.component)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classify_bench: serial vs parallel signature survey"};
    int minN = 4, maxN = 6, repeats = 1;
    app.add_option("--min-n", minN)->capture_default_str();
    app.add_option("--max-n", maxN, "8 at most")->check(CLI::Range(1, 8))->capture_default_str();
    app.add_option("--repeats", repeats, "best-of timing")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    std::printf("%3s %7s %12s %12s %9s %6s\n", "n", "shapes", "serial ms", "parallel ms",
                "speedup", "same");
    bool allSame = true;
    for (int n = minN; n <= maxN; ++n) {
        ClassifyResult serial, parallel;
        double sMs = 1e300, pMs = 1e300;
        for (int r = 0; r < repeats; ++r) {
            ClassifyResult tmp;
            sMs = std::min(sMs, run_ms(n, false, tmp));
            serial = std::move(tmp);
            pMs = std::min(pMs, run_ms(n, true, tmp));
            parallel = std::move(tmp);
        }
        const bool same = same_table(serial, parallel);
        allSame = allSame && same;
        std::printf("%3d %7zu %12.1f %12.1f %8.2fx %6s\n", n, serial.rows.size(), sMs, pMs,
                    sMs / pMs, same ? "yes" : "NO");
    }
    return allSame ? 0 : 1;
}
