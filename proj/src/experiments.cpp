#include "poincare/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>

#include "poincare/rk_oracle.hpp"

namespace poincare {

namespace {

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

// Crossings of the section per return of the (approximately) periodic point,
// counted on a non-rigorous scan over one period.
int countCrossingsPerReturn(const VectorField& F, const Vector& u, double period,
                            const Section& section, const PointFlowConfig& cfg) {
    auto events = scanSectionCrossings(F, u, section.normal(), section.offset(),
                                       1.02 * period, cfg);
    int count = 0;
    for (const auto& ev : events) {
        if (ev.time < 1e-4 * period) continue;
        ++count;
        if (std::fabs(ev.time - period) < 5e-3 * period) return count;
    }
    throw DomainError("crossing scan did not find the return near the reference period");
}

PeriodicOrbit orbitFor(const SystemCatalogEntry& entry, const ExperimentConfig& cfg) {
    if (cfg.polishOrbits || entry.polishByDefault)
        return refinePeriodicOrbit(*entry.field, entry.u, entry.sectionCoord,
                                   entry.referencePeriod, 10, cfg.pointFlow);
    PeriodicOrbit orbit;
    orbit.u = entry.u;
    orbit.period = entry.referencePeriod;
    orbit.monodromy = monodromy(*entry.field, entry.u, entry.referencePeriod, cfg.pointFlow);
    orbit.residual = (pointIntegrate(*entry.field, entry.u, entry.referencePeriod,
                                     cfg.pointFlow) -
                      entry.u)
                         .lpNorm<Eigen::Infinity>();
    return orbit;
}

template <class Fn>
std::vector<CsvRow> mapRows(const std::vector<double>& sizes, int jobs, Fn&& makeRows) {
    std::vector<std::vector<CsvRow>> chunks(sizes.size());
    if (jobs > 1) {
        std::vector<std::future<std::vector<CsvRow>>> futs;
        futs.reserve(sizes.size());
        for (size_t i = 0; i < sizes.size(); ++i)
            futs.push_back(std::async(std::launch::async, [&, i] { return makeRows(sizes[i]); }));
        for (size_t i = 0; i < sizes.size(); ++i) chunks[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < sizes.size(); ++i) chunks[i] = makeRows(sizes[i]);
    }
    std::vector<CsvRow> rows;
    for (auto& c : chunks)
        for (auto& r : c) rows.push_back(std::move(r));
    return rows;
}

}  // namespace

std::string toString(FrameStrategy s) {
    switch (s) {
        case FrameStrategy::Cartesian: return "cartesian";
        case FrameStrategy::DiagNormal: return "diag+normal";
        case FrameStrategy::DiagFlowDir: return "diag+flowdir";
        case FrameStrategy::Custom: return "custom";
    }
    return "?";
}

std::string toString(SectionMode m) {
    switch (m) {
        case SectionMode::Standard: return "standard";
        case SectionMode::Orthogonal: return "orthogonal";
        case SectionMode::Cto: return "cto";
        case SectionMode::MaxAngleCto: return "max-angle-cto";
    }
    return "?";
}

FrameStrategy frameStrategyFromString(const std::string& s) {
    if (s == "cartesian") return FrameStrategy::Cartesian;
    if (s == "diag+normal") return FrameStrategy::DiagNormal;
    if (s == "diag+flowdir") return FrameStrategy::DiagFlowDir;
    throw DomainError("unknown strategy: " + s);
}

SectionMode sectionModeFromString(const std::string& s) {
    if (s == "standard") return SectionMode::Standard;
    if (s == "orthogonal") return SectionMode::Orthogonal;
    if (s == "cto") return SectionMode::Cto;
    if (s == "max-angle-cto") return SectionMode::MaxAngleCto;
    throw DomainError("unknown section mode: " + s);
}

std::string toCsv(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os << "system,strategy,section,log10_s,coord,value_lo,value_hi,ratio\n";
    for (const auto& r : rows) {
        os << r.system << ',' << r.strategy << ',' << r.section << ',';
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.6g", r.log10_s);
        os << buf << ',' << r.coord << ',';
        if (r.error.empty()) {
            os << fmt17(r.lo) << ',' << fmt17(r.hi) << ',' << fmt17(r.ratio) << '\n';
        } else {
            os << "ERROR,ERROR," << r.error << '\n';
        }
    }
    return os.str();
}

ExperimentSetup makeSetup(const SystemCatalogEntry& entry, FrameStrategy strategy,
                          SectionMode mode, const ExperimentConfig& cfg) {
    const VectorField& F = *entry.field;
    ExperimentSetup setup;
    setup.entry = &entry;
    setup.strategy = strategy;
    setup.mode = mode;
    setup.orbit = orbitFor(entry, cfg);
    setup.anchor = setup.orbit.u;

    switch (mode) {
        case SectionMode::Standard:
            setup.section = entry.standardSection();
            setup.crossings = entry.crossings;
            break;
        case SectionMode::Orthogonal: {
            Vector f = F(setup.anchor);
            setup.section = Section::affineThrough(f / f.norm(), setup.anchor,
                                                   CrossingDirection::Positive);
            setup.crossings = countCrossingsPerReturn(F, setup.anchor, setup.orbit.period,
                                                      setup.section, cfg.pointFlow);
            break;
        }
        case SectionMode::Cto: {
            CtoResult cto = ctoSection(F, setup.anchor, setup.orbit.period, cfg.pointFlow);
            setup.section = cto.section;
            setup.crossings = countCrossingsPerReturn(F, setup.anchor, setup.orbit.period,
                                                      setup.section, cfg.pointFlow);
            break;
        }
        case SectionMode::MaxAngleCto: {
            MaxAngleResult res = maxAngleCtoPoint(F, setup.anchor, setup.orbit.period,
                                                  cfg.maxAngleSamples, cfg.pointFlow);
            setup.section = res.section;
            setup.anchor = res.point;
            setup.crossings = countCrossingsPerReturn(F, setup.anchor, setup.orbit.period,
                                                      setup.section, cfg.pointFlow);
            break;
        }
    }

    setup.chart = buildCoordinates(FrameStrategy::DiagFlowDir, setup.anchor, setup.section, F,
                                   setup.orbit.period, cfg.pointFlow);
    if (strategy == FrameStrategy::Cartesian)
        setup.frame = CoordinateFrame::cartesian(F.dim());
    else if (strategy == FrameStrategy::DiagFlowDir)
        setup.frame = setup.chart;
    else
        setup.frame = buildCoordinates(strategy, setup.anchor, setup.section, F,
                                       setup.orbit.period, cfg.pointFlow);
    return setup;
}

RepresentableSet initialSet(const ExperimentSetup& setup, double s) {
    const int n = static_cast<int>(setup.anchor.size());
    IntervalVector r(n);
    r[0] = Interval(0.0);
    for (int i = 1; i < n; ++i) r[i] = Interval(0.5 * s) * Interval::raw(-1.0, 1.0);
    Tripleton t;
    t.x = setup.anchor;
    t.C = setup.chart.B;
    t.r0 = r;
    t.Q = Matrix::Identity(n, n);
    t.q = IntervalVector(Vector::Zero(n));
    t.B = Matrix::Identity(n, n);
    t.r = IntervalVector(Vector::Zero(n));
    return RepresentableSet(t);
}

RowResult runRow(const ExperimentSetup& setup, double s, const ExperimentConfig& cfg) {
    RowResult out;
    try {
        const VectorField& F = *setup.entry->field;
        RepresentableSet X = initialSet(setup, s);
        out.enc = poincareReturn(F, X, setup.section, setup.frame, setup.crossings, cfg.solver,
                                 cfg.poincare);
        out.returnTime = out.enc.returnTime;
        if (setup.strategy == FrameStrategy::Cartesian)
            out.z = matVec(setup.chart.A, out.enc.z - setup.anchor);
        else
            out.z = out.enc.z;
    } catch (const Error& e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

std::vector<CsvRow> rowsFromResult(const ExperimentSetup& setup, double s, const RowResult& r) {
    std::vector<CsvRow> rows;
    const int n = static_cast<int>(setup.anchor.size());
    CsvRow base;
    base.system = setup.entry->name;
    base.strategy = toString(setup.strategy);
    base.section = toString(setup.mode);
    base.log10_s = std::log10(s);
    if (r.failed) {
        base.coord = "t";
        base.error = r.error;
        rows.push_back(base);
        return rows;
    }
    base.coord = "t";
    base.lo = r.returnTime.lo();
    base.hi = r.returnTime.hi();
    base.ratio = r.returnTime.diam() / s;
    rows.push_back(base);
    for (int i = 1; i < n; ++i) {
        CsvRow row = base;
        row.coord = "z" + std::to_string(i + 1);
        row.lo = r.z[i].lo();
        row.hi = r.z[i].hi();
        row.ratio = r.z[i].diam() / s;
        row.error.clear();
        rows.push_back(row);
    }
    return rows;
}

std::vector<CsvRow> runFixedSection(const std::string& system, FrameStrategy strategy,
                                    const std::vector<double>& sizes,
                                    const ExperimentConfig& cfg) {
    const auto& entry = findSystem(system);
    ExperimentSetup setup = makeSetup(entry, strategy, SectionMode::Standard, cfg);
    return mapRows(sizes, cfg.jobs, [&](double s) {
        return rowsFromResult(setup, s, runRow(setup, s, cfg));
    });
}

std::vector<CsvRow> runVaryingSection(const std::string& system, SectionMode mode,
                                      const std::vector<double>& sizes,
                                      const ExperimentConfig& cfg) {
    if (mode == SectionMode::Standard)
        throw DomainError("runVaryingSection: use runFixedSection for the standard section");
    const auto& entry = findSystem(system);
    ExperimentSetup setup = makeSetup(entry, FrameStrategy::DiagFlowDir, mode, cfg);
    return mapRows(sizes, cfg.jobs, [&](double s) {
        return rowsFromResult(setup, s, runRow(setup, s, cfg));
    });
}

VdpSetup makeVdpSetup(SectionMode mode, const ExperimentConfig& cfg) {
    const auto& entry = findSystem("vanderpol");
    const VectorField& F = *entry.field;
    VdpSetup setup;
    setup.mode = mode;
    setup.orbit = orbitFor(entry, cfg);
    if (mode == SectionMode::Orthogonal) {
        // The standard section y = 0 is orthogonal to the flow at the
        // periodic point; the chart is cartesian shifted to u0.
        setup.section = entry.standardSection();
        setup.frame.y = setup.orbit.u;
        setup.frame.B = Matrix::Identity(2, 2);
        setup.frame.A = IntervalMatrix::identity(2);
        setup.frame.strategy = FrameStrategy::Custom;
        setup.frame.sectionAdapted = false;
        setup.B = setup.frame.B;
    } else if (mode == SectionMode::Cto) {
        CtoResult cto = ctoSection(F, setup.orbit.u, setup.orbit.period, cfg.pointFlow);
        setup.section = cto.section;
        setup.frame = buildCoordinates(FrameStrategy::DiagFlowDir, setup.orbit.u, setup.section,
                                       F, setup.orbit.period, cfg.pointFlow);
        setup.B = setup.frame.B;
    } else {
        throw DomainError("vdp tables support the orthogonal and cto sections only");
    }
    return setup;
}

RepresentableSet vdpInitialSet(const VdpSetup& setup, double delta) {
    Doubleton d;
    d.x = setup.orbit.u;
    d.Q = Matrix::Identity(2, 2);
    d.q = IntervalVector(Vector::Zero(2));
    IntervalVector r(2);
    if (setup.mode == SectionMode::Orthogonal) {
        // u = u0 + ([-delta, delta], 0) on the section y = 0.
        d.C = Matrix::Identity(2, 2);
        r[0] = Interval(delta) * Interval::raw(-1.0, 1.0);
        r[1] = Interval(0.0);
    } else {
        // u = u0 + v2 [-delta, delta] on the CTO section.
        d.C = setup.B;
        r[0] = Interval(0.0);
        r[1] = Interval(delta) * Interval::raw(-1.0, 1.0);
    }
    d.r0 = r;
    return RepresentableSet(d);
}

RowResult runVdpRow(const VdpSetup& setup, double delta, const ExperimentConfig& cfg) {
    RowResult out;
    try {
        const auto& entry = findSystem("vanderpol");
        const VectorField& F = *entry.field;
        RepresentableSet X = vdpInitialSet(setup, delta);
        out.enc = poincareReturn(F, X, setup.section, setup.frame, 1, cfg.solver, cfg.poincare);
        out.returnTime = out.enc.returnTime;
        out.z = out.enc.z;
    } catch (const Error& e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

std::vector<CsvRow> runVdpTables(SectionMode mode, const std::vector<double>& deltas,
                                 const ExperimentConfig& cfg) {
    VdpSetup setup = makeVdpSetup(mode, cfg);
    const int reportCoord = mode == SectionMode::Orthogonal ? 0 : 1;
    return mapRows(deltas, cfg.jobs, [&](double delta) {
        RowResult r = runVdpRow(setup, delta, cfg);
        std::vector<CsvRow> rows;
        CsvRow base;
        base.system = "vanderpol";
        base.strategy = mode == SectionMode::Orthogonal ? "cartesian" : "diag+flowdir";
        base.section = toString(mode);
        base.log10_s = std::log10(delta);
        if (r.failed) {
            base.coord = "t";
            base.error = r.error;
            rows.push_back(base);
            return rows;
        }
        base.coord = "t";
        base.lo = r.returnTime.lo();
        base.hi = r.returnTime.hi();
        base.ratio = r.returnTime.diam() / delta;
        rows.push_back(base);
        CsvRow zrow = base;
        zrow.coord = "z" + std::to_string(reportCoord + 1);
        zrow.lo = r.z[reportCoord].lo();
        zrow.hi = r.z[reportCoord].hi();
        zrow.ratio = r.z[reportCoord].diam() / delta;
        rows.push_back(zrow);
        return rows;
    });
}

std::string runAngles(const std::string& system, int samples, const ExperimentConfig& cfg) {
    const auto& entry = findSystem(system);
    PeriodicOrbit orbit = orbitFor(entry, cfg);
    MaxAngleResult res =
        maxAngleCtoPoint(*entry.field, orbit.u, orbit.period, samples, cfg.pointFlow);
    std::ostringstream os;
    os << "t,cos_gamma\n";
    for (size_t i = 0; i < res.scanTimes.size(); ++i)
        os << fmt17(res.scanTimes[i]) << ',' << fmt17(res.scanCos[i]) << '\n';
    return os.str();
}

double fitLogSlope(const std::vector<double>& s, const std::vector<double>& diam) {
    const int n = static_cast<int>(s.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double x = std::log10(s[i]);
        double y = std::log10(diam[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string PropertyReport::toText() const {
    std::ostringstream os;
    for (const auto& i : items) {
        os << (i.pass ? "PASS" : "FAIL") << "  " << i.name;
        if (!i.detail.empty()) os << "  (" << i.detail << ")";
        os << '\n';
    }
    os << (allPass() ? "all checks passed" : "CHECKS FAILED") << '\n';
    return os.str();
}

namespace {

using Rng = std::mt19937_64;

Interval randomInterval(Rng& rng, double span) {
    std::uniform_real_distribution<double> dist(-span, span);
    double a = dist(rng), b = dist(rng);
    return Interval(std::min(a, b), std::max(a, b));
}

double sampleIn(Rng& rng, const Interval& x) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return x.lo() + dist(rng) * (x.hi() - x.lo());
}

Vector samplePoint(Rng& rng, const Doubleton& d) {
    Vector r0(d.r0.size()), q(d.q.size());
    for (int i = 0; i < r0.size(); ++i) r0[i] = sampleIn(rng, d.r0[i]);
    for (int i = 0; i < q.size(); ++i) q[i] = sampleIn(rng, d.q[i]);
    return d.x + d.C * r0 + d.Q * q;
}

Vector samplePoint(Rng& rng, const RepresentableSet& X) {
    return samplePoint(rng, toDoubleton(X));
}

void checkIntervalContainment(PropertyReport& report, Rng& rng) {
    int bad = 0;
    const int N = 10000;
    for (int i = 0; i < N; ++i) {
        Interval a = randomInterval(rng, 10), b = randomInterval(rng, 10);
        double x = sampleIn(rng, a), y = sampleIn(rng, b);
        if (!(a + b).contains(x + y)) ++bad;
        if (!(a - b).contains(x - y)) ++bad;
        if (!(a * b).contains(x * y)) ++bad;
        if (!b.contains(0.0) && !(a / b).contains(x / y)) ++bad;
    }
    report.items.push_back({"interval/containment", bad == 0,
                            std::to_string(N) + " samples, " + std::to_string(bad) + " violations"});
}

void checkIntervalIsotonicity(PropertyReport& report, Rng& rng) {
    int bad = 0;
    const int N = 2000;
    for (int i = 0; i < N; ++i) {
        Interval A = randomInterval(rng, 10), B = randomInterval(rng, 10);
        double a1 = sampleIn(rng, A), a2 = sampleIn(rng, A);
        Interval a(std::min(a1, a2), std::max(a1, a2));
        double b1 = sampleIn(rng, B), b2 = sampleIn(rng, B);
        Interval b(std::min(b1, b2), std::max(b1, b2));
        if (!(A + B).contains(a + b)) ++bad;
        if (!(A - B).contains(a - b)) ++bad;
        if (!(A * B).contains(a * b)) ++bad;
        if (!B.contains(0.0) && !(A / B).contains(a / b)) ++bad;
    }
    report.items.push_back({"interval/isotonicity", bad == 0, std::to_string(bad) + " violations"});
}

void checkVerifiedInverse(PropertyReport& report, Rng& rng) {
    int bad = 0;
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix B(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) B(i, j) = dist(rng) + (i == j ? 3.0 : 0.0);
        IntervalMatrix A = verifiedInverse(B);
        if (!matMul(A, IntervalMatrix(B)).contains(Matrix::Identity(4, 4))) ++bad;
    }
    report.items.push_back({"interval/verified-inverse", bad == 0,
                            std::to_string(bad) + " of 100 products miss the identity"});
}

FunctionMap squareFirstMap() {
    return FunctionMap(
        2, 2,
        [](const IntervalVector& x) {
            IntervalVector r(2);
            r[0] = sqr(x[0]);
            r[1] = x[1];
            return r;
        },
        [](const IntervalVector& x) {
            IntervalMatrix J(2, 2);
            J(0, 0) = Interval(2.0) * x[0];
            J(1, 1) = Interval(1.0);
            return J;
        });
}

Doubleton randomDoubleton(Rng& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Doubleton d;
    d.x = Vector(2);
    d.x << 2 * dist(rng), 2 * dist(rng);
    d.C = Matrix(2, 2);
    d.C << 1 + 0.3 * dist(rng), 0.5 * dist(rng), 0.5 * dist(rng), 1 + 0.3 * dist(rng);
    d.Q = Eigen::HouseholderQR<Matrix>(d.C).householderQ();
    IntervalVector r0(2), q(2);
    for (int i = 0; i < 2; ++i) {
        r0[i] = Interval(0.2 * std::fabs(dist(rng))) * Interval::raw(-1.0, 1.0);
        q[i] = Interval(0.05 * std::fabs(dist(rng))) * Interval::raw(-1.0, 1.0);
    }
    d.r0 = r0;
    d.q = q;
    return d;
}

void checkEvalTightness(PropertyReport& report, Rng& rng) {
    FunctionMap g = squareFirstMap();
    int badTight = 0, badContain = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Doubleton d = randomDoubleton(rng);
        RepresentableSet X(d);
        IntervalVector smart = eval(X, g);
        IntervalVector naive = g.value(enclose(X));
        for (int i = 0; i < 2; ++i)
            if (!naive[i].contains(smart[i])) ++badTight;
        for (int k = 0; k < 200; ++k) {
            Vector p = samplePoint(rng, d);
            Vector gp(2);
            gp << p[0] * p[0], p[1];
            if (!smart.contains(gp)) ++badContain;
        }
    }
    report.items.push_back({"sets/eval-tighter-than-naive", badTight == 0 && badContain == 0,
                            std::to_string(badTight) + " width / " + std::to_string(badContain) +
                                " containment violations"});
}

void checkSeparationRemark(PropertyReport& report) {
    const double eps = 1e-15;
    Doubleton d;
    d.x = Vector(2);
    d.x << 1.0 + eps, 1.0;
    d.C = Matrix(2, 2);
    d.C << 1, 1, 1, -1;
    IntervalVector r0(2);
    r0[0] = Interval(-1.0, 1.0);
    r0[1] = Interval(0.0);
    d.r0 = r0;
    d.Q = Matrix::Identity(2, 2);
    d.q = IntervalVector(Vector::Zero(2));
    Vector w(2);
    w << 1, -1;
    Section diff = Section::affine(w, 0.0);
    Interval smart = diff.evalOnSet(RepresentableSet(d));
    Interval naive = diff.value(enclose(RepresentableSet(d)));
    bool pass = smart.diam() <= 1e-14 && !smart.contains(0.0) && naive.diam() >= 3.9 &&
                naive.contains(0.0);
    std::ostringstream os;
    os << "eval width " << smart.diam() << ", naive width " << naive.diam();
    report.items.push_back({"sets/separation-remark", pass, os.str()});
}

void checkSetMonotonicity(PropertyReport& report, Rng& rng) {
    FunctionMap g = squareFirstMap();
    int bad = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Doubleton d = randomDoubleton(rng);
        Doubleton big = d;
        for (int i = 0; i < 2; ++i) {
            big.r0[i] = Interval(1.5) * d.r0[i];
            big.q[i] = Interval(1.5) * d.q[i];
        }
        IntervalVector e1 = enclose(RepresentableSet(d)), e2 = enclose(RepresentableSet(big));
        IntervalVector v1 = eval(RepresentableSet(d), g), v2 = eval(RepresentableSet(big), g);
        for (int i = 0; i < 2; ++i) {
            if (!e2[i].contains(e1[i])) ++bad;
            if (!v2[i].contains(v1[i])) ++bad;
        }
    }
    report.items.push_back({"sets/monotonicity", bad == 0, std::to_string(bad) + " violations"});
}

// 1000 non-rigorously integrated samples must stay inside the end set and
// inside every tube segment they pass through.
void checkSolverContainment(PropertyReport& report, Rng& rng, const ExperimentConfig& cfg,
                            double maxStepScale, const char* name) {
    struct Case {
        const char* system;
        double radius;
        double horizon;
    };
    const Case cases[] = {{"vanderpol", 1e-5, 1.0}, {"michelson", 1e-6, 1.0}};
    int bad = 0;
    for (const auto& c : cases) {
        const auto& entry = findSystem(c.system);
        const VectorField& F = *entry.field;
        const int n = F.dim();
        IntervalVector box(n);
        for (int i = 0; i < n; ++i)
            box[i] = Interval(entry.u[i]) + Interval(c.radius) * Interval::raw(-1.0, 1.0);
        SolverConfig scfg = cfg.solver;
        scfg.maxStep *= maxStepScale;
        LohnerSolver solver(F, scfg);
        auto flow = solver.integrateTo(RepresentableSet(BoxSet{box}), c.horizon);
        IntervalVector endHull = enclose(RepresentableSet(flow.end));
        for (int s = 0; s < 500; ++s) {
            Vector x0(n);
            for (int i = 0; i < n; ++i) x0[i] = sampleIn(rng, box[i]);
            if (!endHull.contains(rkIntegrate(F, x0, c.horizon))) ++bad;
            if (s % 25 == 0) {
                for (const auto& seg : flow.tube) {
                    Vector xt = rkIntegrate(F, x0, seg.time.mid());
                    if (!seg.box.contains(xt)) ++bad;
                }
            }
        }
    }
    report.items.push_back({name, bad == 0, std::to_string(bad) + " escapes"});
}

void checkWidthGrowth(PropertyReport& report, const ExperimentConfig& cfg) {
    const auto& entry = findSystem("vanderpol");
    LohnerSolver solver(*entry.field, cfg.solver);
    auto flow = solver.integrateTo(RepresentableSet(Doubleton::point(entry.u)),
                                   entry.referencePeriod);
    double w = enclose(RepresentableSet(flow.end)).maxDiam();
    std::ostringstream os;
    os << "diameter after one period " << w;
    report.items.push_back({"solver/width-growth", w < 1e-8, os.str()});
}

void checkLemmaContainment(PropertyReport& report, Rng& rng, const ExperimentConfig& cfg) {
    const auto& entry = findSystem("michelson");
    ExperimentSetup setup = makeSetup(entry, FrameStrategy::DiagFlowDir, SectionMode::Standard, cfg);
    const double s = 1e-6;
    RowResult row = runRow(setup, s, cfg);
    if (row.failed) {
        report.items.push_back({"poincare/lemma-containment", false, row.error});
        return;
    }
    int bad = 0;
    RepresentableSet X = initialSet(setup, s);
    for (int k = 0; k < 100; ++k) {
        Vector x = samplePoint(rng, X);
        RkReturn ret = rkPoincare(*entry.field, x, setup.section, setup.crossings,
                                  2.0 * setup.orbit.period);
        IntervalVector img = matVec(setup.frame.A, IntervalVector(ret.point) - setup.frame.y);
        for (int i = 0; i < img.size(); ++i)
            if (!row.enc.z[i].contains(img[i].mid())) ++bad;
        if (!row.returnTime.contains(ret.time)) ++bad;
    }
    report.items.push_back(
        {"poincare/lemma-containment", bad == 0, std::to_string(bad) + " violations"});
}

void checkSlidingSlopes(PropertyReport& report, const ExperimentConfig& cfg) {
    const auto& entry = findSystem("michelson");
    const std::vector<double> sizes = {1e-6, 1e-5, 1e-4, 1e-3};

    auto slopesFor = [&](FrameStrategy strat) {
        ExperimentSetup setup = makeSetup(entry, strat, SectionMode::Standard, cfg);
        std::vector<double> widths;
        for (double s : sizes) {
            RowResult row = runRow(setup, s, cfg);
            if (row.failed) return std::numeric_limits<double>::quiet_NaN();
            IntervalVector soft = row.enc.yFlow + row.enc.dy;
            double w = 0;
            for (int i = 1; i < soft.size(); ++i) w = std::max(w, soft[i].diam());
            widths.push_back(w);
        }
        return fitLogSlope(sizes, widths);
    };

    double flowSlope = slopesFor(FrameStrategy::DiagFlowDir);
    double cartSlope = slopesFor(FrameStrategy::Cartesian);
    std::ostringstream os;
    os << "diag+flowdir slope " << flowSlope << ", cartesian slope " << cartSlope;
    bool pass = std::fabs(flowSlope - 2.0) <= 0.3 && std::fabs(cartSlope - 1.0) <= 0.3;
    report.items.push_back({"poincare/sliding-slope", pass, os.str()});
}

void checkCtoSlope(PropertyReport& report, const ExperimentConfig& cfg) {
    VdpSetup setup = makeVdpSetup(SectionMode::Cto, cfg);
    const std::vector<double> deltas = {1e-5, 1e-4, 1e-3};
    std::vector<double> widths;
    for (double d : deltas) {
        RowResult row = runVdpRow(setup, d, cfg);
        if (row.failed) {
            report.items.push_back({"poincare/cto-slope", false, row.error});
            return;
        }
        widths.push_back(row.returnTime.diam());
    }
    double slope = fitLogSlope(deltas, widths);
    std::ostringstream os;
    os << "return-time slope " << slope;
    report.items.push_back({"poincare/cto-slope", std::fabs(slope - 2.0) <= 0.3, os.str()});
}

void checkNesting(PropertyReport& report, const ExperimentConfig& cfg) {
    const auto& entry = findSystem("michelson");
    ExperimentSetup setup = makeSetup(entry, FrameStrategy::DiagFlowDir, SectionMode::Standard, cfg);
    RowResult big = runRow(setup, 1e-6, cfg);
    RowResult small = runRow(setup, 5e-7, cfg);
    bool pass = !big.failed && !small.failed;
    int bad = 0;
    if (pass) {
        for (int i = 0; i < big.z.size(); ++i)
            if (!big.z[i].contains(small.z[i])) ++bad;
        pass = bad == 0;
    }
    report.items.push_back({"poincare/nesting", pass, std::to_string(bad) + " coordinates grew"});
}

void checkCatalog(PropertyReport& report, const ExperimentConfig& cfg) {
    bool pass = true;
    std::ostringstream os;
    for (const auto& entry : catalog()) {
        PeriodicOrbit orbit = refinePeriodicOrbit(*entry.field, entry.u, entry.sectionCoord,
                                                  entry.referencePeriod, 10, cfg.pointFlow);
        Eigen::EigenSolver<Matrix> es(orbit.monodromy);
        // lambda = 1 must be recovered; reference multipliers matched.
        double bestOne = 1e9;
        for (int i = 0; i < entry.u.size(); ++i)
            bestOne = std::min(bestOne, std::abs(es.eigenvalues()[i] - std::complex<double>(1, 0)));
        if (bestOne > 1e-4) {
            pass = false;
            os << entry.name << ": lambda=1 off by " << bestOne << "; ";
        }
        for (double ref : entry.referenceMultipliers) {
            double best = 1e9;
            for (int i = 0; i < entry.u.size(); ++i)
                best = std::min(best, std::abs(es.eigenvalues()[i] - std::complex<double>(ref, 0)));
            double tol = std::fabs(ref) < 1e-6 ? 1e-8 : 1e-2 * std::fabs(ref);
            if (best > tol) {
                pass = false;
                os << entry.name << ": multiplier " << ref << " off by " << best << "; ";
            }
        }
        // The catalog point returns to itself within 1e-6.
        RkReturn ret = rkPoincare(*entry.field, entry.u, entry.standardSection(), entry.crossings,
                                  2.0 * entry.referencePeriod);
        double dist = (ret.point - entry.u).lpNorm<Eigen::Infinity>();
        if (dist > 1e-6) {
            pass = false;
            os << entry.name << ": return distance " << dist << "; ";
        }
    }
    report.items.push_back({"systems/catalog", pass, os.str()});
}

void checkCsvDeterminism(PropertyReport& report, const ExperimentConfig& cfg) {
    const std::vector<double> sizes = {1e-6};
    std::string a = toCsv(runFixedSection("michelson", FrameStrategy::DiagFlowDir, sizes, cfg));
    std::string b = toCsv(runFixedSection("michelson", FrameStrategy::DiagFlowDir, sizes, cfg));
    bool pass = a == b && !a.empty();
    // Basic row validity on the same output: lo <= hi, ratio >= 0.
    std::istringstream is(a);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.find("ERROR") != std::string::npos) continue;
        auto lastComma = line.rfind(',');
        double ratio = std::stod(line.substr(lastComma + 1));
        if (ratio < 0) pass = false;
    }
    report.items.push_back({"cli/csv-determinism", pass, ""});
}

void checkCartesianCrossCheck(PropertyReport& report, Rng& rng, const ExperimentConfig& cfg) {
    const auto& entry = findSystem("michelson");
    ExperimentSetup cart = makeSetup(entry, FrameStrategy::Cartesian, SectionMode::Standard, cfg);
    ExperimentSetup flow = makeSetup(entry, FrameStrategy::DiagFlowDir, SectionMode::Standard, cfg);
    const double s = 1e-6;
    RowResult rc = runRow(cart, s, cfg);
    RowResult rf = runRow(flow, s, cfg);
    bool pass = !rc.failed && !rf.failed;
    int bad = 0;
    if (pass) {
        // Both charts enclose the same set, so both must contain sampled
        // oracle images; the cartesian route must not be tighter.
        RepresentableSet X = initialSet(flow, s);
        for (int k = 0; k < 50; ++k) {
            Vector x = samplePoint(rng, X);
            RkReturn ret = rkPoincare(*entry.field, x, flow.section, flow.crossings,
                                      2.0 * flow.orbit.period);
            IntervalVector img = matVec(flow.chart.A, IntervalVector(ret.point) - flow.anchor);
            for (int i = 1; i < img.size(); ++i) {
                if (!rc.z[i].contains(img[i].mid())) ++bad;
                if (!rf.z[i].contains(img[i].mid())) ++bad;
            }
        }
        for (int i = 1; i < rc.z.size(); ++i)
            if (rc.z[i].diam() < rf.z[i].diam()) ++bad;
        pass = bad == 0;
    }
    report.items.push_back({"cli/cartesian-cross-check", pass, std::to_string(bad) + " violations"});
}

}  // namespace

PropertyReport runPropertySuite(unsigned seed, const ExperimentConfig& cfg) {
    PropertyReport report;
    Rng rng(seed);
    checkIntervalContainment(report, rng);
    checkIntervalIsotonicity(report, rng);
    checkVerifiedInverse(report, rng);
    checkEvalTightness(report, rng);
    checkSeparationRemark(report);
    checkSetMonotonicity(report, rng);
    checkSolverContainment(report, rng, cfg, 1.0, "solver/containment");
    checkSolverContainment(report, rng, cfg, 0.5, "solver/containment-half-step");
    checkWidthGrowth(report, cfg);
    checkLemmaContainment(report, rng, cfg);
    checkSlidingSlopes(report, cfg);
    checkCtoSlope(report, cfg);
    checkNesting(report, cfg);
    checkCatalog(report, cfg);
    checkCsvDeterminism(report, cfg);
    checkCartesianCrossCheck(report, rng, cfg);
    return report;
}

}  // namespace poincare
