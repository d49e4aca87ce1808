#pragma once

#include "gns/error.hpp"
#include "gns/spectral/grid.hpp"
#include "gns/spectral/spectral_field.hpp"
#include "gns/spectral/fft.hpp"
#include "gns/spectral/shells.hpp"
#include "gns/spectral/field_io.hpp"
#include "gns/operator/velocity_field.hpp"
#include "gns/operator/q_coefficients.hpp"
#include "gns/operator/gns_operator.hpp"
#include "gns/solver/trajectory.hpp"
#include "gns/solver/gauss_legendre.hpp"
#include "gns/solver/duhamel.hpp"
#include "gns/solver/picard.hpp"
#include "gns/solver/etd.hpp"
#include "gns/solver/checkpoint.hpp"
#include "gns/diagnostics/norms.hpp"
#include "gns/diagnostics/tails.hpp"
#include "gns/diagnostics/formulas.hpp"
#include "gns/diagnostics/radius.hpp"
#include "gns/diagnostics/bound_report.hpp"
#include "gns/diagnostics/bilinear_checks.hpp"
#include "gns/util/random.hpp"
#include "gns/experiment/initial_data.hpp"
#include "gns/experiment/config.hpp"
#include "gns/experiment/scenario.hpp"
#include "gns/experiment/selftest.hpp"
