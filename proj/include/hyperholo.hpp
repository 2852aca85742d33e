#pragma once

#include "hyperholo/errors.hpp"
#include "hyperholo/forms.hpp"
#include "hyperholo/fd.hpp"
#include "hyperholo/quadrature.hpp"
#include "hyperholo/sampling.hpp"
#include "hyperholo/hkspace.hpp"
#include "hyperholo/bgmetric.hpp"
#include "hyperholo/ghspace.hpp"
#include "hyperholo/dynkin.hpp"
#include "hyperholo/hkquotient.hpp"
#include "hyperholo/twistor.hpp"
#include "hyperholo/report.hpp"
#include "hyperholo/suites.hpp"
