// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
