/**
 * DOM wiring for the studio page. All behavior lives in the imported
 * modules; this file only reads inputs, forwards events, and paints.
 */
import { fetchReferences } from "./api.js";
import { AnnotationSession, LANDMARK_COUNT } from "./annotate.js";
import { StudioController } from "./controller.js";
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing element #${id}`);
    return node;
}
const inputImage = el("input-image");
const inputLandmarks = el("input-landmarks");
const inputLabels = el("input-labels");
const refImage = el("ref-image");
const refLandmarks = el("ref-landmarks");
const refLabels = el("ref-labels");
const gallery = el("gallery");
const galleryStatus = el("gallery-status");
const retryButton = el("gallery-retry");
const alphaSlider = el("alpha");
const betaSlider = el("beta");
const alphaValue = el("alpha-value");
const betaValue = el("beta-value");
const illuminationToggle = el("illumination");
const airbangsToggle = el("airbangs");
const modeSelect = el("structure-mode");
const applyButton = el("apply");
const beforeImg = el("before");
const afterImg = el("after");
const timingsPre = el("timings");
const errorBox = el("error");
const errorText = el("error-text");
const busySpinner = el("busy");
const annotateCanvas = el("annotate-canvas");
const annotateStatus = el("annotate-status");
const annotateUndo = el("annotate-undo");
const annotateUse = el("annotate-use");
let lastResultUrl = null;
const controller = new StudioController({
    renderResult(result) {
        if (lastResultUrl)
            URL.revokeObjectURL(lastResultUrl);
        lastResultUrl = URL.createObjectURL(result.bytes);
        afterImg.src = lastResultUrl;
        const lines = Object.entries(result.timings).map(([stage, seconds]) => `${stage.padEnd(10)} ${(seconds * 1000).toFixed(1)} ms`);
        timingsPre.textContent = lines.join("\n") + `\nsha256 ${result.sha256}`;
        errorBox.hidden = true;
    },
    renderError(message) {
        errorText.textContent = message;
        errorBox.hidden = false;
    },
    setBusy(busy) {
        busySpinner.hidden = !busy;
    },
});
el("error-dismiss").addEventListener("click", () => {
    errorBox.hidden = true;
});
// ---- uploads ------------------------------------------------------------
function tripleFrom(image, landmarks, labels, annotated) {
    const img = image.files?.[0];
    const lmk = landmarks.files?.[0] ?? annotated;
    const lbl = labels.files?.[0];
    if (!img || !lmk || !lbl)
        return null;
    return { image: img, landmarks: lmk, labels: lbl };
}
let annotatedLandmarks = null;
let annotation = null;
function refreshInputTriple() {
    controller.session.inputFiles = tripleFrom(inputImage, inputLandmarks, inputLabels, annotatedLandmarks);
    controller.parametersChanged();
}
for (const input of [inputImage, inputLandmarks, inputLabels]) {
    input.addEventListener("change", () => {
        if (input === inputImage)
            startAnnotationPreview();
        refreshInputTriple();
    });
}
function refreshReferenceTriple() {
    const triple = tripleFrom(refImage, refLandmarks, refLabels, null);
    if (triple) {
        controller.session.uploadReference(triple);
        highlightGallery(null);
        controller.parametersChanged();
    }
}
for (const input of [refImage, refLandmarks, refLabels]) {
    input.addEventListener("change", refreshReferenceTriple);
}
// ---- manual landmark annotation ----------------------------------------
function startAnnotationPreview() {
    const file = inputImage.files?.[0];
    if (!file)
        return;
    const url = URL.createObjectURL(file);
    const img = new Image();
    img.onload = () => {
        annotateCanvas.width = img.naturalWidth;
        annotateCanvas.height = img.naturalHeight;
        const ctx = annotateCanvas.getContext("2d");
        ctx.drawImage(img, 0, 0);
        annotation = new AnnotationSession(img.naturalWidth, img.naturalHeight);
        annotatedLandmarks = null;
        beforeImg.src = url;
        drawAnnotation(img);
    };
    img.src = url;
}
function drawAnnotation(background) {
    if (!annotation)
        return;
    const ctx = annotateCanvas.getContext("2d");
    if (background)
        ctx.drawImage(background, 0, 0);
    ctx.fillStyle = "#ff3366";
    for (const p of annotation.snapshot()) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, 2, 0, Math.PI * 2);
        ctx.fill();
    }
    const group = annotation.currentGroup();
    annotateStatus.textContent = group
        ? `click point ${annotation.count + 1}/${LANDMARK_COUNT}: ` +
            `${group.name} #${group.indexInGroup + 1}`
        : `all ${LANDMARK_COUNT} points placed — press "use these points"`;
    annotateUse.disabled = !annotation.isComplete;
}
annotateCanvas.addEventListener("click", (ev) => {
    if (!annotation || annotation.isComplete)
        return;
    const rect = annotateCanvas.getBoundingClientRect();
    const x = ((ev.clientX - rect.left) / rect.width) * annotateCanvas.width;
    const y = ((ev.clientY - rect.top) / rect.height) * annotateCanvas.height;
    annotation.addPoint({ x, y });
    drawAnnotation();
});
annotateUndo.addEventListener("click", () => {
    annotation?.undo();
    drawAnnotation();
});
annotateUse.addEventListener("click", () => {
    if (!annotation?.isComplete)
        return;
    annotatedLandmarks = new Blob([annotation.toLandmarksJSON()], {
        type: "application/json",
    });
    refreshInputTriple();
});
// ---- gallery -------------------------------------------------------------
function highlightGallery(id) {
    for (const node of gallery.querySelectorAll(".gallery-entry")) {
        node.classList.toggle("selected", node.getAttribute("data-id") === id);
    }
}
function renderGallery(entries) {
    gallery.replaceChildren();
    if (entries.length === 0) {
        galleryStatus.textContent = "no bundled references — upload your own";
        return;
    }
    galleryStatus.textContent = "";
    for (const entry of entries) {
        const button = document.createElement("button");
        button.className = "gallery-entry";
        button.setAttribute("data-id", entry.id);
        const img = document.createElement("img");
        img.src = `/references/${entry.thumbnail}`;
        img.alt = entry.name;
        const label = document.createElement("span");
        label.textContent = entry.name;
        button.append(img, label);
        button.addEventListener("click", () => {
            controller.session.selectReference(entry.id);
            highlightGallery(entry.id);
            controller.parametersChanged();
        });
        gallery.append(button);
    }
}
async function loadGallery() {
    galleryStatus.textContent = "loading gallery…";
    retryButton.hidden = true;
    try {
        renderGallery(await fetchReferences());
    }
    catch (err) {
        galleryStatus.textContent = `gallery unavailable: ${err instanceof Error ? err.message : err}`;
        retryButton.hidden = false;
    }
}
retryButton.addEventListener("click", () => void loadGallery());
// ---- parameter controls ---------------------------------------------------
alphaSlider.addEventListener("input", () => {
    const stored = controller.session.setAlpha(Number(alphaSlider.value));
    alphaSlider.value = String(stored);
    alphaValue.textContent = stored.toFixed(2);
    controller.parametersChanged();
});
betaSlider.addEventListener("input", () => {
    const stored = controller.session.setBeta(Number(betaSlider.value));
    betaSlider.value = String(stored);
    betaValue.textContent = String(stored);
    controller.parametersChanged();
});
illuminationToggle.addEventListener("change", () => {
    controller.session.params.illumination = illuminationToggle.checked;
    controller.parametersChanged();
});
airbangsToggle.addEventListener("change", () => {
    controller.session.params.airbangs = airbangsToggle.checked;
    controller.parametersChanged();
});
modeSelect.addEventListener("change", () => {
    controller.session.setStructureMode(modeSelect.value);
    controller.parametersChanged();
});
applyButton.addEventListener("click", () => controller.applyNow());
// ---- boot -----------------------------------------------------------------
alphaValue.textContent = controller.session.params.alpha.toFixed(2);
betaValue.textContent = String(controller.session.params.beta);
void loadGallery();
