#include "poincare/systems.hpp"

#include <cstdio>
#include <sstream>

namespace poincare {

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}
Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}
Vector vec4(double a, double b, double c, double d) {
    Vector v(4);
    v << a, b, c, d;
    return v;
}

std::vector<SystemCatalogEntry> buildCatalog() {
    std::vector<SystemCatalogEntry> entries;

    {
        SystemCatalogEntry e;
        e.name = "michelson";
        e.aliases = {"m"};
        e.equations = "x' = y; y' = z; z' = c^2 - y - x^2/2";
        e.field = std::make_shared<MichelsonField>(0.8);
        e.parameters = {{"c", 0.8}};
        e.u = vec3(0.0, 1.32825866108569290258, 0.0);
        e.sectionCoord = 0;
        e.sectionConstraint = CrossingDirection::Either;
        e.crossings = 2;
        e.referencePeriod = 7.1265909142566689;
        e.referenceMultipliers = {-21.57189303583905, -0.046356617768258279};
        entries.push_back(std::move(e));
    }
    {
        SystemCatalogEntry e;
        e.name = "falkner-skan";
        e.aliases = {"fs"};
        e.equations = "x' = y; y' = z; z' = c (y^2 - 1) - x z";
        e.field = std::make_shared<FalknerSkanField>(250.0);
        e.parameters = {{"c", 250.0}};
        e.u = vec3(0.0, 0.939712208779672476275, 0.0);
        e.sectionCoord = 0;
        e.sectionConstraint = CrossingDirection::Either;
        e.crossings = 2;
        e.referencePeriod = 1.1896763246593596;
        e.referenceMultipliers = {-3.1255162015308575, -0.31994714969329141};
        e.polishByDefault = true;
        entries.push_back(std::move(e));
    }
    {
        SystemCatalogEntry e;
        e.name = "rossler-hyperchaotic";
        e.aliases = {"rossler-h", "rh"};
        e.equations = "x' = -y - w; y' = x + a y + z; z' = d y + c w; w' = x w + b";
        e.field = std::make_shared<Rossler4DField>(0.25, 3.0, -0.5, 0.05);
        e.parameters = {{"a", 0.25}, {"b", 3.0}, {"c", -0.5}, {"d", 0.05}};
        e.u = vec4(-29.841563300389689, 0.0, 15.047757539453583, 0.10059818458161384);
        e.sectionCoord = 1;
        e.sectionConstraint = CrossingDirection::Either;
        e.crossings = 2;
        e.referencePeriod = 11.8998429091538266;
        e.referenceMultipliers = {-2.9753618617897111, 1.11933293616997, -2e-18};
        entries.push_back(std::move(e));
    }
    {
        SystemCatalogEntry e;
        e.name = "rossler-period-doubling";
        e.aliases = {"rossler-pd", "rpd"};
        e.equations = "x' = -y - w; y' = x + a y + z; z' = d y + c w; w' = x w + b";
        e.field = std::make_shared<Rossler4DField>(0.25, 3.0, -0.397617541005413, 0.05);
        e.parameters = {{"a", 0.25}, {"b", 3.0}, {"c", -0.397617541005413}, {"d", 0.05}};
        e.u = vec4(-16.051468914417546, 0.0, 8.362179513564907, 0.18738588995067224);
        e.sectionCoord = 1;
        e.sectionConstraint = CrossingDirection::Either;
        e.crossings = 2;
        e.referencePeriod = 11.1976701594497343;
        e.referenceMultipliers = {1.2039286263296654, -1.0, -6e-17};
        entries.push_back(std::move(e));
    }
    {
        SystemCatalogEntry e;
        e.name = "vanderpol";
        e.aliases = {"vdp", "van-der-pol"};
        e.equations = "x' = y; y' = 0.2 y (1 - x^2) - x";
        e.field = std::make_shared<VanDerPolField>(0.2);
        e.parameters = {{"mu", 0.2}};
        e.u = vec2(2.0004136789920905, 0.0);
        e.sectionCoord = 1;
        e.sectionConstraint = CrossingDirection::Negative;
        e.crossings = 1;
        e.referencePeriod = 6.297248296874497;
        e.referenceMultipliers = {};
        entries.push_back(std::move(e));
    }
    return entries;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<SystemCatalogEntry>& catalog() {
    static const std::vector<SystemCatalogEntry> entries = buildCatalog();
    return entries;
}

const SystemCatalogEntry& findSystem(std::string_view nameOrAlias) {
    for (const auto& e : catalog()) {
        if (e.name == nameOrAlias) return e;
        for (const auto& a : e.aliases)
            if (a == nameOrAlias) return e;
    }
    throw DomainError("unknown system: " + std::string(nameOrAlias));
}

std::string catalogToText() {
    std::ostringstream os;
    os << "# Case-study systems: fields, reference periodic points, standard sections,\n";
    os << "# Floquet multipliers and periods (periods computed once by Newton shooting).\n";
    for (const auto& e : catalog()) {
        os << "\n[" << e.name << "]\n";
        os << "equations = " << e.equations << "\n";
        for (const auto& [k, v] : e.parameters) os << k << " = " << fmt(v) << "\n";
        os << "u =";
        for (int i = 0; i < e.u.size(); ++i) os << " " << fmt(e.u[i]);
        os << "\n";
        os << "section = x" << (e.sectionCoord + 1) << " = 0";
        if (e.sectionConstraint == CrossingDirection::Positive) os << " (increasing)";
        if (e.sectionConstraint == CrossingDirection::Negative) os << " (decreasing)";
        os << "\n";
        os << "crossings-per-return = " << e.crossings << "\n";
        os << "period = " << fmt(e.referencePeriod) << "\n";
        if (!e.referenceMultipliers.empty()) {
            os << "multipliers =";
            for (double m : e.referenceMultipliers) os << " " << fmt(m);
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace poincare
