#pragma once

#include <string>
#include <vector>

#include "poincare/coordinates.hpp"
#include "poincare/systems.hpp"

namespace poincare {

enum class SectionMode { Standard, Orthogonal, Cto, MaxAngleCto };

std::string toString(FrameStrategy s);
std::string toString(SectionMode m);
FrameStrategy frameStrategyFromString(const std::string& s);
SectionMode sectionModeFromString(const std::string& s);

struct ExperimentConfig {
    SolverConfig solver;
    PoincareOptions poincare;
    PointFlowConfig pointFlow;
    bool polishOrbits = true;
    int jobs = 1;
    int maxAngleSamples = 1000;
};

// One CSV row of the experiment output.  Failed rows keep their position and
// carry an error marker instead of values.
struct CsvRow {
    std::string system;
    std::string strategy;
    std::string section;
    double log10_s = 0;
    std::string coord;  // "t" for the return time, "z2".. for coordinates
    double lo = 0, hi = 0;
    double ratio = 0;   // diam / s
    std::string error;
};

std::string toCsv(const std::vector<CsvRow>& rows);

// Fully-configured single experiment (shared across sizes of one sweep).
struct ExperimentSetup {
    const SystemCatalogEntry* entry = nullptr;
    PeriodicOrbit orbit;     // polished when configured, else catalog values
    Vector anchor;           // u, or u(t*) for the max-angle mode
    Section section;
    CoordinateFrame frame;   // frame passed to the map computation
    CoordinateFrame chart;   // diag+flowdir chart defining X and the reports
    int crossings = 2;
    FrameStrategy strategy = FrameStrategy::DiagFlowDir;
    SectionMode mode = SectionMode::Standard;
};

ExperimentSetup makeSetup(const SystemCatalogEntry& entry, FrameStrategy strategy,
                          SectionMode mode, const ExperimentConfig& cfg);

// The initial set u + B r with r = s/2 * (0, [-1,1], ..., [-1,1]), stored in
// the tripleton form the solver folds on entry.
RepresentableSet initialSet(const ExperimentSetup& setup, double s);

// One row of Tables-style experiments: z enclosure in the chart coordinates
// plus the refined return time.
struct RowResult {
    bool failed = false;
    std::string error;
    Interval returnTime;
    IntervalVector z;          // chart coordinates (z1 flow direction)
    PoincareEnclosure enc;     // raw enclosure in `frame` coordinates
};
RowResult runRow(const ExperimentSetup& setup, double s, const ExperimentConfig& cfg);

std::vector<CsvRow> rowsFromResult(const ExperimentSetup& setup, double s,
                                   const RowResult& r);

// Table drivers.
std::vector<CsvRow> runFixedSection(const std::string& system, FrameStrategy strategy,
                                    const std::vector<double>& sizes,
                                    const ExperimentConfig& cfg);
std::vector<CsvRow> runVaryingSection(const std::string& system, SectionMode mode,
                                      const std::vector<double>& sizes,
                                      const ExperimentConfig& cfg);

// Van der Pol crossing-time tables (orthogonal section in cartesian
// coordinates, CTO section in the flow-direction chart).
struct VdpSetup {
    PeriodicOrbit orbit;
    Section section;
    CoordinateFrame frame;
    Matrix B;            // columns (flow direction | section tangent)
    SectionMode mode = SectionMode::Orthogonal;
};
VdpSetup makeVdpSetup(SectionMode mode, const ExperimentConfig& cfg);
RepresentableSet vdpInitialSet(const VdpSetup& setup, double delta);
RowResult runVdpRow(const VdpSetup& setup, double delta, const ExperimentConfig& cfg);
std::vector<CsvRow> runVdpTables(SectionMode mode, const std::vector<double>& deltas,
                                 const ExperimentConfig& cfg);

// Angle scan along a periodic orbit (t, cos gamma(t)).
std::string runAngles(const std::string& system, int samples, const ExperimentConfig& cfg);

// Invariant suites of all modules, reported one line per check.
struct PropertyReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool allPass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    std::string toText() const;
};
PropertyReport runPropertySuite(unsigned seed, const ExperimentConfig& cfg);

// Least-squares slope of log10(diam) against log10(s); shared by the scaling
// checks and the property suite.
double fitLogSlope(const std::vector<double>& s, const std::vector<double>& diam);

}  // namespace poincare
