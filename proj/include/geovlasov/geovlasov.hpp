#pragma once

#include "geovlasov/config.hpp"
#include "geovlasov/equilibrium.hpp"
#include "geovlasov/expression.hpp"
#include "geovlasov/field.hpp"
#include "geovlasov/geometry.hpp"
#include "geovlasov/kernel_quadrature.hpp"
#include "geovlasov/linear.hpp"
#include "geovlasov/scenarios.hpp"
#include "geovlasov/version.hpp"
#include "geovlasov/vlasov.hpp"
