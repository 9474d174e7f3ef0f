#include <gtest/gtest.h>

#include <random>

#include "config.hpp"
#include "errors.hpp"

using namespace poromt;

namespace {

const char* kMinimal =
    "rho = 0.001\nmu = 0.01\nb = 0.001\nJ = 0.001\ndelta = 0.001\nxi = 0.001\n"
    "d = 0.001\nalpha = 0.001\nkappa = 0.001\nk = 1\nl = 1\n"
    "s = 11\ndt = 0.045454545454545456\nt_final = 25\n";

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parse succeeded";
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseConfig, ShippedReferenceConfig) {
  const RunConfig cfg = load_config(POROMT_CONFIG_DIR "/reference.cfg");
  EXPECT_EQ(cfg.params, reference_params());
  EXPECT_EQ(cfg.s, 11);
  EXPECT_DOUBLE_EQ(cfg.dt, 1.0 / 22.0);
  EXPECT_EQ(cfg.t_final, 25.0);
  for (const ProfilePreset* pr : {&cfg.init_u0, &cfg.init_u1, &cfg.init_phi0, &cfg.init_phi1, &cfg.init_w0}) {
    EXPECT_EQ(pr->kind, ProfilePreset::Kind::Parabola);
  }
  EXPECT_EQ(cfg.output_every, 1);
}

TEST(ParseConfig, ShippedMmsAndSweepConfigs) {
  EXPECT_NO_THROW(load_config(POROMT_CONFIG_DIR "/mms.cfg"));
  const SweepSpec spec = load_sweep_config(POROMT_CONFIG_DIR "/sweep.cfg");
  ASSERT_EQ(spec.axes.size(), 2u);
  EXPECT_EQ(spec.axes[0].first, "k");
  EXPECT_EQ(spec.axes[0].second.size(), 3u);
}

TEST(ParseConfig, DefaultsForOptionalKeys) {
  const RunConfig cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.init_u0.kind, ProfilePreset::Kind::Zero);
  EXPECT_EQ(cfg.output_every, 1);
}

TEST(ParseConfig, EmptyDocumentMissesRho) {
  EXPECT_EQ(code_of(""), ErrorCode::MissingKey);
  EXPECT_NE(message_of("").find("'rho'"), std::string::npos);
}

TEST(ParseConfig, MissingLaterKey) {
  std::string text = kMinimal;
  text.replace(text.find("t_final = 25\n"), 13, "");
  EXPECT_EQ(code_of(text), ErrorCode::MissingKey);
  EXPECT_NE(message_of(text).find("t_final"), std::string::npos);
}

TEST(ParseConfig, UnknownKey) {
  EXPECT_EQ(code_of(std::string(kMinimal) + "gamma = 2\n"), ErrorCode::UnknownKey);
}

TEST(ParseConfig, ParseErrorsCarryLineNumber) {
  const std::string bad_number = std::string(kMinimal) + "\n# comment\ninit_u0 = parabola\noutput_every = two\n";
  EXPECT_EQ(code_of(bad_number), ErrorCode::Parse);
  EXPECT_NE(message_of(bad_number).find("line 18"), std::string::npos) << message_of(bad_number);

  EXPECT_EQ(code_of("rho 0.001\n"), ErrorCode::Parse);
  EXPECT_NE(message_of("rho 0.001\n").find("line 1"), std::string::npos);
  EXPECT_EQ(code_of(std::string(kMinimal) + "s = 11.5\n"), ErrorCode::Parse);
  EXPECT_EQ(code_of(std::string(kMinimal) + "init_w0 = cubic\n"), ErrorCode::Parse);
  EXPECT_EQ(code_of("rho =\n"), ErrorCode::Parse);
}

TEST(ParseConfig, DuplicateKeyRejected) {
  EXPECT_EQ(code_of(std::string(kMinimal) + "rho = 0.002\n"), ErrorCode::Parse);
}

TEST(ParseConfig, CommentsWhitespaceAndCrlf) {
  std::string text;
  for (char c : std::string(kMinimal)) {
    if (c == '\n') text += "   # trailing\r\n";
    else text += c;
  }
  text = "# header\r\n\r\n" + text;
  EXPECT_EQ(parse_config(text), parse_config(kMinimal));
}

TEST(ParseConfig, ParamsAreValidated) {
  std::string text = kMinimal;
  text.replace(text.find("mu = 0.01"), 9, "mu = 0.0001");
  EXPECT_EQ(code_of(text), ErrorCode::EllipticityViolated);
  text = kMinimal;
  text.replace(text.find("k = 1"), 5, "k = -1");
  EXPECT_EQ(code_of(text), ErrorCode::NonPositiveParameter);
}

TEST(ParseConfig, SingleElementIsLeftToMeshBuild) {
  std::string text = kMinimal;
  text.replace(text.find("s = 11"), 6, "s = 1");
  RunConfig cfg;
  ASSERT_NO_THROW(cfg = parse_config(text));
  try {
    run(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewElements);
  }
}

TEST(LoadConfig, MissingFileIsIoError) {
  try {
    load_config("/nonexistent/dir/missing.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
    EXPECT_NE(std::string(e.what()).find("missing.cfg"), std::string::npos);
  }
}

TEST(SerializeConfig, RoundTripsRandomConfigs) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* presets[] = {"zero", "parabola", "sine:1", "sine:4"};
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig cfg;
    PhysicalParams& p = cfg.params;
    for (double* v : {&p.rho, &p.b, &p.J, &p.delta, &p.xi, &p.d, &p.alpha, &p.kappa, &p.k, &p.l}) {
      *v = std::exp(8.0 * u(rng) - 4.0);
    }
    p.mu = (p.b * p.b / p.xi) * (1.0 + 10.0 * u(rng)) + 1e-12;
    cfg.s = 2 + static_cast<int>(100 * u(rng));
    cfg.dt = u(rng) * 0.1 + 1e-4;
    cfg.t_final = cfg.dt * (2.0 + 300.0 * u(rng));
    cfg.init_u0 = ProfilePreset::parse(presets[trial % 4]);
    cfg.init_w0 = ProfilePreset::parse(presets[(trial / 4) % 4]);
    cfg.output_every = 1 + trial % 7;
    const RunConfig back = parse_config(serialize_config(cfg));
    EXPECT_EQ(back, cfg) << serialize_config(cfg);
  }
}

TEST(SweepConfig, AxesAndGrid) {
  const SweepSpec spec = parse_sweep_config(std::string(kMinimal) + "sweep.k = 1, 2\nsweep.init_w0 = zero, sine:2, parabola\n");
  ASSERT_EQ(spec.axes.size(), 2u);
  EXPECT_EQ(spec.axes[1].second[1], "sine:2");
}

TEST(SweepConfig, Errors) {
  auto code = [](const std::string& text) {
    try {
      parse_sweep_config(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code(std::string(kMinimal) + "sweep.gamma = 1, 2\n"), ErrorCode::UnknownKey);
  EXPECT_EQ(code(std::string(kMinimal) + "sweep.k = 1,,2\n"), ErrorCode::Parse);
  EXPECT_EQ(code(std::string(kMinimal) + "sweep.k = 1, 2,\n"), ErrorCode::Parse);
}
