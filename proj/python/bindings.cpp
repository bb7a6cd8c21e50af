#include "negcut/energy.hpp"
#include "negcut/errors.hpp"
#include "negcut/hardness.hpp"
#include "negcut/image.hpp"
#include "negcut/lanczos.hpp"
#include "negcut/oracle_large.hpp"
#include "negcut/oracle_small.hpp"
#include "negcut/segment.hpp"
#include "negcut/smoothness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace negcut;

namespace {

RawImage from_array(py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> arr) {
    const auto info = arr.request();
    if (info.ndim == 2) {
        RawImage img(std::size_t(info.shape[1]), std::size_t(info.shape[0]));
        const auto* src = static_cast<const std::uint8_t*>(info.ptr);
        for (std::size_t p = 0; p < img.size(); ++p) img.pixels[p] = {src[p], src[p], src[p]};
        return img;
    }
    if (info.ndim == 3 && info.shape[2] == 3) {
        RawImage img(std::size_t(info.shape[1]), std::size_t(info.shape[0]));
        const auto* src = static_cast<const std::uint8_t*>(info.ptr);
        for (std::size_t p = 0; p < img.size(); ++p) img.pixels[p] = {src[3 * p], src[3 * p + 1], src[3 * p + 2]};
        return img;
    }
    throw InvalidArgument("expected an (H, W) or (H, W, 3) uint8 array");
}

py::array_t<std::uint8_t> to_array(const RawImage& img) {
    py::array_t<std::uint8_t> out({py::ssize_t(img.height), py::ssize_t(img.width), py::ssize_t(3)});
    auto* dst = out.mutable_data();
    for (std::size_t p = 0; p < img.size(); ++p) {
        dst[3 * p] = img.pixels[p].r;
        dst[3 * p + 1] = img.pixels[p].g;
        dst[3 * p + 2] = img.pixels[p].b;
    }
    return out;
}

Labeling labeling_from(py::array_t<bool, py::array::c_style | py::array::forcecast> fore) {
    Labeling l(std::size_t(fore.size()), Label::Back);
    const bool* src = fore.data();
    for (std::size_t p = 0; p < l.size(); ++p)
        if (src[p]) l.labels[p] = Label::Fore;
    return l;
}

py::array_t<bool> labeling_to(const Labeling& l) {
    py::array_t<bool> out(py::ssize_t(l.size()));
    auto* dst = out.mutable_data();
    for (std::size_t p = 0; p < l.size(); ++p) dst[p] = l.isFore(p);
    return out;
}

template <typename Oracle>
py::array_t<double> oracle_matvec(const Oracle& o, py::array_t<double, py::array::c_style | py::array::forcecast> r) {
    const auto y = o.matvec({r.data(), std::size_t(r.size())});
    return py::array_t<double>(py::ssize_t(y.size()), y.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Automatic binary segmentation by largest-eigenvector cuts on negative-weight graphs";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ImageError>(m, "ImageError", PyExc_IOError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<Connectivity>(m, "Connectivity").value("FOUR", Connectivity::Four).value("EIGHT", Connectivity::Eight);
    py::enum_<SmoothnessMode>(m, "SmoothnessMode")
        .value("CONSTANT", SmoothnessMode::Constant)
        .value("EXPONENTIAL", SmoothnessMode::Exponential);
    py::enum_<Estimator>(m, "Estimator").value("PAPER", Estimator::Paper).value("CONSISTENT", Estimator::Consistent);
    py::enum_<ColorSpace>(m, "ColorSpace").value("SMALL", ColorSpace::Small).value("LARGE", ColorSpace::Large);

    py::class_<RawImage>(m, "RawImage")
        .def(py::init(&from_array), py::arg("pixels"))
        .def_readonly("width", &RawImage::width)
        .def_readonly("height", &RawImage::height)
        .def("to_numpy", &to_array);

    py::class_<IndexedImage>(m, "IndexedImage")
        .def_readonly("width", &IndexedImage::width)
        .def_readonly("height", &IndexedImage::height)
        .def_readonly("counts", &IndexedImage::counts)
        .def_property_readonly("class_count", &IndexedImage::classCount)
        .def_property_readonly("total", &IndexedImage::total)
        .def_property_readonly("class_of", [](const IndexedImage& img) {
            return py::array_t<std::uint32_t>(py::ssize_t(img.classOf.size()), img.classOf.data());
        });

    py::class_<SmoothnessGraph>(m, "SmoothnessGraph")
        .def_property_readonly("size", &SmoothnessGraph::size)
        .def_property_readonly("edge_count", [](const SmoothnessGraph& g) { return g.edges().size(); })
        .def_property_readonly("total_weight", &SmoothnessGraph::totalWeight);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("data_term", &EnergyBreakdown::dataTerm)
        .def_readonly("smoothness_term", &EnergyBreakdown::smoothnessTerm)
        .def_readonly("lam", &EnergyBreakdown::lambda)
        .def_readonly("total", &EnergyBreakdown::total);

    py::class_<EigenResult>(m, "EigenResult")
        .def_readonly("eigenvalue", &EigenResult::eigenvalue)
        .def_readonly("eigenvector", &EigenResult::eigenvector)
        .def_readonly("iterations", &EigenResult::iterations)
        .def_readonly("residual_norm", &EigenResult::residualNorm)
        .def_readonly("converged", &EigenResult::converged);

    py::class_<SegmentationResult>(m, "SegmentationResult")
        .def_property_readonly("fore", [](const SegmentationResult& r) { return labeling_to(r.labeling); })
        .def_readonly("eigen", &SegmentationResult::eigen)
        .def_readonly("exact", &SegmentationResult::exact)
        .def_readonly("approx_energy", &SegmentationResult::approxEnergy)
        .def_readonly("cut_value", &SegmentationResult::cutValue)
        .def_readonly("fore_count", &SegmentationResult::foreCount)
        .def_readonly("back_count", &SegmentationResult::backCount)
        .def_readonly("boundary_edges", &SegmentationResult::boundaryEdges);

    py::class_<KernelModel>(m, "KernelModel")
        .def_readonly("sigma2", &KernelModel::sigma2)
        .def_readonly("class_pair_w2", &KernelModel::classPairW2);

    py::class_<SmallOracle>(m, "SmallOracle")
        .def(py::init([](const IndexedImage& img, const SmoothnessGraph& g, double lam) {
                 return SmallOracle(img, g, lam);
             }),
             py::arg("image"), py::arg("graph"), py::arg("lam"))
        .def("matvec", &oracle_matvec<SmallOracle>)
        .def("dense", [](const SmallOracle& o) { return materialize_dense(o); })
        .def_property_readonly("total_weight", &SmallOracle::totalWeight);

    py::class_<LargeOracle>(m, "LargeOracle")
        .def(py::init([](const IndexedImage& img, const SmoothnessGraph& g, double lam, const KernelModel& km) {
                 return LargeOracle(img, g, lam, km);
             }),
             py::arg("image"), py::arg("graph"), py::arg("lam"), py::arg("model"))
        .def("matvec", &oracle_matvec<LargeOracle>)
        .def("dense", [](const LargeOracle& o) { return materialize_dense(o); })
        .def_property_readonly("total_weight", &LargeOracle::totalWeight);

    m.def("load_image", &load_image, py::arg("path"));
    m.def("write_image", &write_image, py::arg("image"), py::arg("path"));
    m.def(
        "write_mask",
        [](py::array_t<bool, py::array::c_style | py::array::forcecast> fore, std::size_t w, std::size_t h,
           const std::filesystem::path& path) { write_mask(labeling_from(fore), w, h, path); },
        py::arg("fore"), py::arg("width"), py::arg("height"), py::arg("path"));
    m.def("resize_max", &resize_max, py::arg("image"), py::arg("max_dim"));
    m.def("quantize_gray", &quantize_gray, py::arg("image"), py::arg("levels") = 16);
    m.def(
        "kmeans_cluster",
        [](const RawImage& img, std::size_t classes, std::uint64_t seed, std::size_t maxIter) {
            return kmeans_cluster(img, {classes, seed, maxIter});
        },
        py::arg("image"), py::arg("classes") = 16, py::arg("seed") = 42, py::arg("max_iter") = 100);
    m.def("estimate_sigma", &estimate_sigma, py::arg("image"));
    m.def("build_class_kernel", &build_class_kernel, py::arg("image"), py::arg("sigma2"),
          py::arg("estimator") = Estimator::Consistent);
    m.def(
        "build_smoothness",
        [](const RawImage& img, Connectivity conn, SmoothnessMode mode, std::optional<double> beta, double offset) {
            return build_smoothness(img, {conn, mode, beta, offset});
        },
        py::arg("image"), py::arg("connectivity") = Connectivity::Four, py::arg("mode") = SmoothnessMode::Constant,
        py::arg("beta") = py::none(), py::arg("offset") = 0.0);

    m.def("f3", &f3, py::arg("x"));
    m.def("f3_approx", &f3_approx, py::arg("x"));
    m.def(
        "delta_stats",
        [](std::size_t samples) {
            const auto s = delta_stats(samples);
            return py::make_tuple(s.mean, s.mse);
        },
        py::arg("samples") = 100000);
    m.def(
        "exact_energy",
        [](const IndexedImage& img, py::array_t<bool> fore, const SmoothnessGraph& g, double lam) {
            return exact_energy(img, labeling_from(fore), g, lam);
        },
        py::arg("image"), py::arg("fore"), py::arg("graph"), py::arg("lam"));
    m.def(
        "approx_energy",
        [](const IndexedImage& img, py::array_t<bool> fore, const SmoothnessGraph& g, double lam, bool restore) {
            return approx_energy(img, labeling_from(fore), g, lam, restore);
        },
        py::arg("image"), py::arg("fore"), py::arg("graph"), py::arg("lam"), py::arg("restore_constants") = false);

    m.def(
        "segment",
        [](const IndexedImage& img, const SmoothnessGraph& g, ColorSpace space, double lam, double sigma2,
           Estimator estimator, double tol, std::uint64_t seed) {
            SegmentParams p;
            p.space = space;
            p.lambda = lam;
            p.kernel = {sigma2, estimator};
            p.lanczos.tol = tol;
            p.lanczos.seed = seed;
            return segment(img, g, p);
        },
        py::arg("image"), py::arg("graph"), py::arg("space") = ColorSpace::Small, py::arg("lam") = 1.0,
        py::arg("sigma2") = 1.0, py::arg("estimator") = Estimator::Consistent, py::arg("tol") = 1e-6,
        py::arg("seed") = 42);
    m.def(
        "threshold_labels",
        [](const std::vector<double>& v) { return labeling_to(threshold_labels(v)); }, py::arg("vector"));

    m.def(
        "decide_partition", [](const std::vector<std::uint64_t>& v) { return decide_partition({v}); },
        py::arg("values"));
    m.def(
        "brute_force_blocks", [](const std::vector<std::uint64_t>& v) { return brute_force_blocks({v}); },
        py::arg("values"));
    m.def(
        "partition_target", [](const std::vector<std::uint64_t>& v) { return partition_target({v}); },
        py::arg("values"));
}
