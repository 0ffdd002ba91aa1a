#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ratinterp/harness.hpp"
#include "ratinterp/multirat.hpp"
#include "ratinterp/text.hpp"
#include "ratinterp/unipoly.hpp"
#include "ratinterp/unirat.hpp"

namespace py = pybind11;
using namespace ratinterp;

namespace {

// Python ints cross the boundary as decimal strings.
Integer to_integer(const py::handle &obj)
{
    Integer v;
    if (v.set_str(py::str(py::int_(py::reinterpret_borrow<py::object>(obj))).cast<std::string>(), 10) != 0) {
        throw py::value_error("not an integer");
    }
    return v;
}

py::int_ to_py(const Integer &v)
{
    return py::int_(py::str(v.get_str()));
}

py::list terms_to_py(const MultiPoly &p)
{
    py::list out;
    for (const auto &t : p.terms()) {
        out.append(py::make_tuple(to_py(t.coef), py::tuple(py::cast(t.exps))));
    }
    return out;
}

// Accepts anything with numerator/denominator, which covers int and
// fractions.Fraction.
Rational to_rational(const py::object &v)
{
    if (!py::hasattr(v, "numerator") || !py::hasattr(v, "denominator")) {
        throw py::type_error("black box must return an int or fractions.Fraction");
    }
    return Rational(to_integer(v.attr("numerator")), to_integer(v.attr("denominator")));
}

class PyBlackBox final : public BlackBox {
public:
    PyBlackBox(std::size_t n, py::function fn) : n_(n), fn_(std::move(fn)) {}
    std::size_t nvars() const override { return n_; }

protected:
    Rational evaluate(std::span<const Integer> point) override
    {
        py::list args;
        for (const auto &x : point) {
            args.append(to_py(x));
        }
        return to_rational(fn_(args));
    }

private:
    std::size_t n_;
    py::function fn_;
};

py::dict result_to_py(const InterpolationResult &r)
{
    py::dict d;
    d["text"] = format_rational(r.function);
    d["numerator"] = terms_to_py(r.function.num());
    d["denominator"] = terms_to_py(r.function.den());
    d["mu"] = to_py(r.mu);
    d["queries"] = r.queries;
    d["iterations"] = r.iterations;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact sparse rational function interpolation";

    static py::exception<Error> error_type(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::object code = py::str(std::string(to_string(e.code())));
            PyErr_SetObject(error_type.ptr(), py::make_tuple(py::str(e.what()), code).ptr());
        }
    });

    m.def(
        "urfunsi1",
        [](py::function f, std::size_t T, const py::int_ &C, std::uint64_t max_iter) {
            PyBlackBox bb(1, std::move(f));
            return result_to_py(urfunsi1(bb, T, to_integer(C), max_iter));
        },
        py::arg("f"), py::arg("T"), py::arg("C"), py::arg("max_iter") = 10'000'000);
    m.def(
        "urfunsi2",
        [](py::function f, std::size_t T, const py::int_ &C, std::uint64_t max_iter) {
            PyBlackBox bb(1, std::move(f));
            return result_to_py(urfunsi2(bb, T, to_integer(C), max_iter));
        },
        py::arg("f"), py::arg("T"), py::arg("C"), py::arg("max_iter") = 10'000'000);
    m.def(
        "urfunsip",
        [](py::function f, Exponent D, const py::int_ &C, std::uint64_t max_iter) {
            PyBlackBox bb(1, std::move(f));
            return result_to_py(urfunsip(bb, D, to_integer(C), max_iter));
        },
        py::arg("f"), py::arg("D"), py::arg("C"), py::arg("max_iter") = 10'000'000);
    m.def(
        "mrfunsi1",
        [](py::function f, std::size_t n, std::size_t T, Exponent D, const py::int_ &C, std::uint64_t N,
           std::uint64_t seed, std::size_t validation_points) {
            PyBlackBox bb(n, std::move(f));
            MultiInterpolationOptions o;
            o.seed = seed;
            o.validation_points = validation_points;
            return result_to_py(mrfunsi1(bb, T, D, to_integer(C), N, o));
        },
        py::arg("f"), py::arg("n"), py::arg("T"), py::arg("D"), py::arg("C"), py::arg("N") = std::uint64_t{1} << 40,
        py::arg("seed") = 0, py::arg("validation_points") = 0);
    m.def(
        "mrfunsi2",
        [](py::function f, std::size_t n, Exponent D, Exponent Dn, const py::int_ &C, std::uint64_t N,
           std::uint64_t seed, std::size_t validation_points) {
            PyBlackBox bb(n, std::move(f));
            MultiInterpolationOptions o;
            o.seed = seed;
            o.validation_points = validation_points;
            return result_to_py(mrfunsi2(bb, D, Dn, to_integer(C), N, o));
        },
        py::arg("f"), py::arg("n"), py::arg("D"), py::arg("Dn"), py::arg("C"), py::arg("N") = std::uint64_t{1} << 40,
        py::arg("seed") = 0, py::arg("validation_points") = 0);

    m.def(
        "upoly_decode",
        [](const py::int_ &rho, const py::int_ &beta, const py::int_ &C) -> py::object {
            const auto r = upoly_decode(to_integer(rho), to_integer(beta), to_integer(C));
            if (!r) {
                return py::none();
            }
            py::list out;
            for (const auto &t : r.poly().terms()) {
                out.append(py::make_tuple(to_py(t.coef), t.exp));
            }
            return out;
        },
        py::arg("rho"), py::arg("beta"), py::arg("C"));

    m.def(
        "random_instance",
        [](std::size_t n, std::size_t T, Exponent D, const py::int_ &C, std::uint64_t seed) {
            return format_rational(random_instance({n, T, D, to_integer(C), seed}));
        },
        py::arg("n"), py::arg("T"), py::arg("D"), py::arg("C"), py::arg("seed") = 0);

    m.def(
        "canonical",
        [](const std::string &text, std::optional<std::size_t> n) { return format_rational(parse_rational(text, n)); },
        py::arg("text"), py::arg("n") = py::none());
    m.def(
        "evaluate",
        [](const std::string &text, const std::vector<py::int_> &point) {
            const RationalFunction h = parse_rational(text, point.size());
            std::vector<Integer> pt;
            for (const auto &x : point) {
                pt.push_back(to_integer(x));
            }
            const Rational v = eval_rational(h, pt);
            return py::module_::import("fractions").attr("Fraction")(to_py(v.numer()), to_py(v.denom()));
        },
        py::arg("text"), py::arg("point"));
}
