#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "qhe/bitlinalg.hpp"
#include "qhe/chen.hpp"
#include "qhe/cloudsvc.hpp"
#include "qhe/error.hpp"
#include "qhe/gsw.hpp"
#include "qhe/modlinalg.hpp"
#include "qhe/qotp.hpp"
#include "qhe/rng.hpp"
#include "qhe/wire.hpp"

namespace py = pybind11;

namespace {

using Rows = std::vector<std::vector<int>>;

qhe::gf2::BitMatrix to_bit_matrix(const Rows& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  qhe::gf2::BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw qhe::ShapeError("ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, static_cast<qhe::gf2::Bit>(rows[i][j]));
  }
  return m;
}

Rows from_bit_matrix(const qhe::gf2::BitMatrix& m) {
  Rows rows(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

std::vector<std::vector<std::uint64_t>> from_zq_matrix(const qhe::zq::ZqMatrix& m) {
  std::vector<std::vector<std::uint64_t>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
  return rows;
}

Rows from_chen(const qhe::chen::ChenCiphertext& c) {
  Rows rows;
  for (const auto& seg : c.segments) rows.emplace_back(seg.bits().begin(), seg.bits().end());
  return rows;
}

qhe::chen::ChenCiphertext to_chen(const Rows& rows) {
  qhe::chen::ChenCiphertext c;
  for (const auto& r : rows) c.segments.emplace_back(std::vector<std::uint8_t>(r.begin(), r.end()));
  return c;
}

}  // namespace

PYBIND11_MODULE(qhe, m) {
  m.doc() = "Additively homomorphic Chen, GSW and QOTP schemes with a /process cloud protocol";

  auto base = py::register_exception<qhe::Error>(m, "Error");
  py::register_exception<qhe::ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<qhe::SingularMatrixError>(m, "SingularMatrixError", base.ptr());
  py::register_exception<qhe::ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<qhe::PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<qhe::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<qhe::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<qhe::SchemeError>(m, "SchemeError", base.ptr());
  py::register_exception<qhe::ProtocolError>(m, "ProtocolError", base.ptr());
  py::register_exception<qhe::ExhaustionError>(m, "ExhaustionError", base.ptr());
  py::register_exception<qhe::IoError>(m, "IoError", base.ptr());

  py::class_<qhe::Rng>(m, "Rng").def(py::init<std::uint64_t>(), py::arg("seed"));

  py::class_<qhe::AdditionService>(m, "AdditionService")
      .def("process", &qhe::AdditionService::process, py::arg("request_document"));
  py::class_<qhe::cloud::LoopbackService, qhe::AdditionService>(m, "LoopbackService").def(py::init<>());
  py::class_<qhe::cloud::HttpService, qhe::AdditionService>(m, "HttpService")
      .def(py::init([](std::string endpoint) { return std::make_unique<qhe::cloud::HttpService>(std::move(endpoint)); }),
           py::arg("endpoint"));

  m.def("handle_document", [](const std::string& body) {
    auto reply = qhe::cloud::handle_document(body);
    return py::make_tuple(reply.status, py::bytes(reply.body).attr("decode")("utf-8"));
  }, py::arg("body"), "Run the service handler on a request document; returns (status, body).");

  auto gf2 = m.def_submodule("gf2", "Linear algebra over GF(2)");
  gf2.def("matmul", [](const Rows& a, const Rows& b) {
    return from_bit_matrix(qhe::gf2::matmul(to_bit_matrix(a), to_bit_matrix(b)));
  });
  gf2.def("invert", [](const Rows& a) { return from_bit_matrix(qhe::gf2::invert(to_bit_matrix(a))); });
  gf2.def("random_invertible", [](std::size_t n, qhe::Rng& rng) {
    return from_bit_matrix(qhe::gf2::random_invertible(n, rng));
  });
  gf2.def("random_permutation", [](std::size_t n, qhe::Rng& rng) {
    return from_bit_matrix(qhe::gf2::random_permutation(n, rng));
  });

  auto zq = m.def_submodule("zq", "Arithmetic modulo q");
  zq.def("is_prime", &qhe::zq::is_prime);
  zq.def("generate_sophie_germain_prime", &qhe::zq::generate_sophie_germain_prime, py::arg("bits"), py::arg("rng"));
  zq.def("centered_residue", &qhe::zq::centered_residue, py::arg("x"), py::arg("q"));

  auto chen = m.def_submodule("chen", "Chen's Hamming-code scheme");
  py::class_<qhe::chen::ChenKeys>(chen, "ChenKeys")
      .def_property_readonly("psi", [](const qhe::chen::ChenKeys& k) { return from_bit_matrix(k.psi); })
      .def_property_readonly("message_bits", &qhe::chen::ChenKeys::message_bits)
      .def_property_readonly("codeword_bits", &qhe::chen::ChenKeys::codeword_bits);
  chen.def("keygen", &qhe::chen::keygen, py::arg("n"), py::arg("rng"));
  chen.def("encrypt", [](std::uint64_t x, const qhe::chen::ChenKeys& keys, std::size_t min_segments) {
    return from_chen(qhe::chen::encrypt(x, keys, min_segments));
  }, py::arg("x"), py::arg("keys"), py::arg("min_segments") = 1);
  chen.def("xor_add", [](const Rows& a, const Rows& b) { return from_chen(qhe::chen::xor_add(to_chen(a), to_chen(b))); });
  chen.def("decrypt", [](const Rows& c, const qhe::chen::ChenKeys& keys) { return qhe::chen::decrypt(to_chen(c), keys); });
  chen.def("he_add", &qhe::chen::he_add, py::arg("x1"), py::arg("x2"), py::arg("keys"), py::arg("cloud"));

  auto gsw = m.def_submodule("gsw", "Gentry-Sahai-Waters scheme");
  py::class_<qhe::gsw::GswParams>(gsw, "GswParams")
      .def_readonly("k", &qhe::gsw::GswParams::k)
      .def_readonly("q", &qhe::gsw::GswParams::q)
      .def_readonly("n", &qhe::gsw::GswParams::n)
      .def_readonly("l", &qhe::gsw::GswParams::l)
      .def_readonly("m", &qhe::gsw::GswParams::m)
      .def_readonly("noise_density", &qhe::gsw::GswParams::noise_density)
      .def_readonly("message_bound", &qhe::gsw::GswParams::message_bound);
  py::class_<qhe::gsw::GswKeys>(gsw, "GswKeys").def_readonly("params", &qhe::gsw::GswKeys::params);
  py::class_<qhe::gsw::GswCiphertext>(gsw, "GswCiphertext")
      .def_property_readonly("c", [](const qhe::gsw::GswCiphertext& c) { return from_zq_matrix(c.c); });
  gsw.def("keygen", &qhe::gsw::keygen, py::arg("k"), py::arg("noise_density") = qhe::gsw::kDefaultNoiseDensity,
          py::arg("message_bound") = 0, py::arg("rng"));
  gsw.def("encrypt", [](const qhe::gsw::GswKeys& keys, std::uint64_t mu, qhe::Rng& rng) {
    return qhe::gsw::encrypt(keys.pk, keys.params, mu, rng);
  }, py::arg("keys"), py::arg("mu"), py::arg("rng"));
  gsw.def("add", &qhe::gsw::add);
  gsw.def("decrypt", [](const qhe::gsw::GswKeys& keys, const qhe::gsw::GswCiphertext& c) {
    return qhe::gsw::decrypt(keys.sk, keys.params, c);
  }, py::arg("keys"), py::arg("c"));
  gsw.def("he_add", &qhe::gsw::he_add, py::arg("x1"), py::arg("x2"), py::arg("keys"), py::arg("cloud"), py::arg("rng"));

  auto qotp = m.def_submodule("qotp", "Quantum one-time pad");
  py::class_<qhe::qotp::QotpKeys>(qotp, "QotpKeys")
      .def_readonly("a", &qhe::qotp::QotpKeys::a)
      .def_readonly("b", &qhe::qotp::QotpKeys::b)
      .def_readonly("c", &qhe::qotp::QotpKeys::c)
      .def_readonly("d", &qhe::qotp::QotpKeys::d);
  py::class_<qhe::qotp::QotpCipherPair>(qotp, "QotpCipherPair")
      .def_readonly("x_bits", &qhe::qotp::QotpCipherPair::x_bits)
      .def_readonly("y_bits", &qhe::qotp::QotpCipherPair::y_bits)
      .def_readonly("x_phase", &qhe::qotp::QotpCipherPair::x_phase)
      .def_readonly("y_phase", &qhe::qotp::QotpCipherPair::y_phase);
  py::class_<qhe::qotp::QotpResult>(qotp, "QotpResult")
      .def_readonly("bits", &qhe::qotp::QotpResult::bits)
      .def_readonly("phase", &qhe::qotp::QotpResult::phase);
  qotp.def("keygen", &qhe::qotp::keygen, py::arg("width"), py::arg("rng"));
  qotp.def("bit_carry", &qhe::qotp::bit_carry, py::arg("m1"), py::arg("m2"), py::arg("width"));
  qotp.def("encrypt", &qhe::qotp::encrypt, py::arg("m1"), py::arg("m2"), py::arg("keys"));
  qotp.def("cloud_parity_add", &qhe::qotp::cloud_parity_add, py::arg("pair"));
  qotp.def("decrypt", &qhe::qotp::decrypt, py::arg("result"), py::arg("keys"), py::arg("carry"));
  qotp.def("he_add", &qhe::qotp::he_add, py::arg("m1"), py::arg("m2"), py::arg("cloud"), py::arg("rng"));
}
