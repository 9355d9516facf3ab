#pragma once

#include "signed_spectra/bit_vector.hpp"
#include "signed_spectra/conjectures.hpp"
#include "signed_spectra/errors.hpp"
#include "signed_spectra/fixtures.hpp"
#include "signed_spectra/graph.hpp"
#include "signed_spectra/io.hpp"
#include "signed_spectra/search.hpp"
#include "signed_spectra/spectra.hpp"
#include "signed_spectra/switching.hpp"
