#include <fstream>
#include <sstream>
#include <variant>

#include <multiroot/cli/runner.hpp>
#include <multiroot/error.hpp>

#include "document.hpp"

namespace multiroot::cli
{

using detail::Document;
using detail::json;

InputError::InputError(const std::string &source, std::size_t line, const std::string &message)
    : std::runtime_error(line == 0 ? source + ": " + message : source + ":" + std::to_string(line) + ": " + message),
      line_(line)
{
}

const char *to_string(Representation r) noexcept
{
    return r == Representation::roots ? "roots" : "coefficients";
}

namespace
{

Representation representation_from(const Document &doc, const std::string &name)
{
    if (name == "roots") {
        return Representation::roots;
    }
    if (name == "coefficients") {
        return Representation::coefficients;
    }
    doc.fail("representation", "representation must be 'roots' or 'coefficients', got '" + name + "'");
}

PolyFamily coefficient_form(const Document &doc, Family family, const json &data)
{
    try {
        if (family == Family::algebraic) {
            return AlgebraicPoly(doc.reals(data, "coefficients"));
        }
        if (!data.is_object()) {
            doc.fail("coefficients", "coefficients of a periodic family must be an object");
        }
        const bool trig = family == Family::trigonometric;
        const char *even = trig ? "cos" : "ch";
        const char *odd = trig ? "sin" : "sh";
        doc.only_keys(data, "coefficients", {"a0", even, odd});
        Real a0 = doc.real(doc.require(data, "a0"), "a0");
        auto a = doc.reals(doc.require(data, even), even);
        auto b = doc.reals(doc.require(data, odd), odd);
        if (trig) {
            return TrigPoly(std::move(a0), std::move(a), std::move(b));
        }
        return ExpPoly(std::move(a0), std::move(a), std::move(b));
    } catch (const Error &e) {
        doc.fail("coefficients", e.what());
    }
}

} // namespace

Problem parse_problem(std::string_view text, const std::string &source, std::optional<long> precision_override)
{
    const Document doc(text, source);
    const json &root = doc.root();
    doc.only_keys(root, "problem",
                  {"label", "family", "representation", "coefficients", "roots", "scale", "multiplicities", "initial",
                   "precision_bits", "settings", "truth", "theorem"});

    SolveSettings settings;
    if (precision_override) {
        settings.precision_bits = *precision_override;
    } else if (doc.find(root, "precision_bits") != nullptr) {
        settings.precision_bits = doc.integer(root, "precision_bits");
    }
    if (settings.precision_bits < 53) {
        doc.fail("precision_bits", "precision_bits must be at least 53");
    }
    PrecisionScope scope(settings.precision_bits);

    std::string label = doc.find(root, "label") != nullptr ? doc.string(root, "label") : std::string();
    Family family{};
    try {
        family = family_from_string(doc.string(root, "family"));
    } catch (const Error &e) {
        doc.fail("family", e.what());
    }
    const Representation representation = representation_from(doc, doc.string(root, "representation"));

    auto multiplicities = doc.integers(doc.require(root, "multiplicities"), "multiplicities");
    auto initial = doc.reals(doc.require(root, "initial"), "initial");
    if (initial.size() != multiplicities.size()) {
        doc.fail("initial", std::to_string(initial.size()) + " initial approximations for "
                                + std::to_string(multiplicities.size()) + " multiplicities");
    }
    for (int a : multiplicities) {
        if (a < 1) {
            doc.fail("multiplicities", "multiplicities must be at least 1");
        }
    }

    std::optional<std::vector<Real>> truth;
    if (const json *t = doc.find(root, "truth")) {
        truth = doc.reals(*t, "truth");
        if (truth->size() != multiplicities.size()) {
            doc.fail("truth", std::to_string(truth->size()) + " true roots for " + std::to_string(multiplicities.size())
                                  + " multiplicities");
        }
    }

    std::optional<PolyFamily> poly;
    if (representation == Representation::roots) {
        if (doc.find(root, "coefficients") != nullptr) {
            doc.fail("coefficients", "'coefficients' given with the roots representation");
        }
        auto roots = doc.reals(doc.require(root, "roots"), "roots");
        if (roots.size() != multiplicities.size()) {
            doc.fail("roots", std::to_string(roots.size()) + " roots for " + std::to_string(multiplicities.size())
                                  + " multiplicities");
        }
        Real scale(1);
        if (const json *s = doc.find(root, "scale")) {
            scale = doc.real(*s, "scale");
        }
        if (!truth) {
            truth = roots;
        }
        std::optional<RootConfiguration> config;
        try {
            config.emplace(std::move(roots), multiplicities);
        } catch (const Error &e) {
            doc.fail("roots", e.what());
        }
        try {
            poly = FactoredForm(family, std::move(*config), std::move(scale));
        } catch (const Error &e) {
            doc.fail("multiplicities", e.what());
        }
    } else {
        if (doc.find(root, "roots") != nullptr || doc.find(root, "scale") != nullptr) {
            doc.fail(doc.find(root, "roots") != nullptr ? "roots" : "scale",
                     "'roots' and 'scale' belong to the roots representation");
        }
        poly = coefficient_form(doc, family, doc.require(root, "coefficients"));
        std::size_t sum = 0;
        for (int a : multiplicities) {
            sum += static_cast<std::size_t>(a);
        }
        const std::size_t n = degree(*poly);
        const std::size_t expected = family == Family::algebraic ? n : 2 * n;
        if (sum != expected) {
            doc.fail("multiplicities", "multiplicities sum to " + std::to_string(sum) + " but a " + to_string(family)
                                           + " polynomial of degree " + std::to_string(n) + " needs "
                                           + std::to_string(expected));
        }
    }

    if (const json *s = doc.find(root, "settings")) {
        if (!s->is_object()) {
            doc.fail("settings", "'settings' must be an object");
        }
        doc.only_keys(*s, "settings", {"max_iterations", "tolerance", "sweep"});
        if (doc.find(*s, "max_iterations") != nullptr) {
            settings.max_iterations = static_cast<int>(doc.integer(*s, "max_iterations"));
            if (settings.max_iterations < 1) {
                doc.fail("max_iterations", "max_iterations must be at least 1");
            }
        }
        if (const json *t = doc.find(*s, "tolerance")) {
            settings.correction_tolerance = doc.real(*t, "tolerance");
            if (!(*settings.correction_tolerance > Real(0))) {
                doc.fail("tolerance", "tolerance must be positive");
            }
        }
        if (doc.find(*s, "sweep") != nullptr) {
            try {
                settings.sweep = sweep_mode_from_string(doc.string(*s, "sweep"));
            } catch (const Error &e) {
                doc.fail("sweep", e.what());
            }
        }
    }
    settings.truth = truth;

    TheoremInput theorem;
    if (const json *t = doc.find(root, "theorem")) {
        if (!t->is_object()) {
            doc.fail("theorem", "'theorem' must be an object");
        }
        doc.only_keys(*t, "theorem", {"c", "q", "kappa"});
        for (const char *key : {"c", "q", "kappa"}) {
            if (const json *v = doc.find(*t, key)) {
                auto &slot = key[0] == 'c' ? theorem.c : key[0] == 'q' ? theorem.q : theorem.kappa;
                slot = doc.real(*v, key);
            }
        }
    }

    return Problem{
        .label = std::move(label),
        .family = family,
        .representation = representation,
        .poly = std::move(*poly),
        .multiplicities = std::move(multiplicities),
        .initial = std::move(initial),
        .settings = std::move(settings),
        .theorem = std::move(theorem),
    };
}

Problem load_problem(const std::string &path, std::optional<long> precision_override)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(path, 0, "cannot open problem file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_problem(text.str(), path, precision_override);
}

std::string render_problem(const Problem &problem)
{
    const long bits = problem.settings.precision_bits;
    using detail::format_real;
    using detail::real_array;
    json out;
    if (!problem.label.empty()) {
        out["label"] = problem.label;
    }
    out["family"] = to_string(problem.family);
    out["representation"] = to_string(problem.representation);
    out["precision_bits"] = bits;
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, AlgebraicPoly>) {
                out["coefficients"] = real_array(p.coefficients(), bits);
            } else if constexpr (std::is_same_v<T, TrigPoly>) {
                out["coefficients"] = {{"a0", format_real(p.a0(), bits)},
                                       {"cos", real_array(p.cos_coeffs(), bits)},
                                       {"sin", real_array(p.sin_coeffs(), bits)}};
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                out["coefficients"] = {{"a0", format_real(p.a0(), bits)},
                                       {"ch", real_array(p.ch_coeffs(), bits)},
                                       {"sh", real_array(p.sh_coeffs(), bits)}};
            } else {
                out["roots"] = real_array(p.config().roots(), bits);
                out["scale"] = format_real(p.scale(), bits);
            }
        },
        problem.poly);
    out["multiplicities"] = problem.multiplicities;
    out["initial"] = real_array(problem.initial, bits);
    if (problem.settings.truth) {
        out["truth"] = real_array(*problem.settings.truth, bits);
    }
    json settings;
    settings["max_iterations"] = problem.settings.max_iterations;
    if (problem.settings.correction_tolerance) {
        settings["tolerance"] = format_real(*problem.settings.correction_tolerance, bits);
    }
    settings["sweep"] = to_string(problem.settings.sweep);
    out["settings"] = settings;
    if (problem.theorem.c || problem.theorem.q || problem.theorem.kappa) {
        json t;
        if (problem.theorem.c) {
            t["c"] = format_real(*problem.theorem.c, bits);
        }
        if (problem.theorem.q) {
            t["q"] = format_real(*problem.theorem.q, bits);
        }
        if (problem.theorem.kappa) {
            t["kappa"] = format_real(*problem.theorem.kappa, bits);
        }
        out["theorem"] = t;
    }
    return out.dump(2) + "\n";
}

RootConfiguration parse_root_list(std::string_view spec)
{
    std::vector<Real> roots;
    std::vector<int> mults;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        const std::string_view item = spec.substr(start, comma - start);
        const std::size_t colon = item.rfind(':');
        if (item.empty() || colon == std::string_view::npos || colon + 1 == item.size()) {
            throw Error(ErrorKind::invalid_input, "root entry '" + std::string(item) + "' is not of the form x:a");
        }
        roots.emplace_back(item.substr(0, colon));
        const std::string count(item.substr(colon + 1));
        std::size_t used = 0;
        int a = 0;
        try {
            a = std::stoi(count, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != count.size()) {
            throw Error(ErrorKind::invalid_input, "multiplicity '" + count + "' is not an integer");
        }
        mults.push_back(a);
        start = comma + 1;
    }
    return RootConfiguration(std::move(roots), std::move(mults));
}

std::vector<Real> parse_real_list(std::string_view spec)
{
    std::vector<Real> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        out.emplace_back(spec.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace multiroot::cli
